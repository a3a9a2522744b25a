#include <string>

#include "transform_internal.hpp"

namespace ikd {

namespace {

struct Exported {
  Multiset sigma;
  Proof proof;
};

// multiset union keeping the larger multiplicity
Multiset ms_union(const Multiset& a, const Multiset& b) {
  Multiset out = a;
  for (const auto& f : ms_set(b))
    for (std::size_t k = ms_count(a, f); k < ms_count(b, f); ++k) out.push_back(f);
  return ms(out);
}

Exported ex(const Proof& t, const Formula& a) {
  if (t->hypothesis) {
    if (!(t->seq == Sequent({}, a)))
      throw InputError("deduction_export: hypothesis '" + t->seq.str() + "' is not |- " + a.str());
    return {{a}, identity(a)};
  }
  const RuleInstance& in = t->inst;
  std::vector<Exported> ps;
  for (const auto& p : t->premises) ps.push_back(ex(p, a));
  switch (in.rule) {
    case Rule::IdP:
    case Rule::LBot:
    case Rule::RTop:
      return {{}, t};
    case Rule::N:
      return {ms_nabla(ps[0].sigma), ikd::apply(in, {ps[0].proof})};
    case Rule::RDynImp:
      return {ms_box(ps[0].sigma), abstraction(ps[0].proof, t->seq.ant, ps[0].sigma, in.principal->lhs())};
    case Rule::Cut:
      return {ms_sum(ms_nabla(ps[0].sigma, in.cut_n()), ps[1].sigma), ikd::apply(in, {ps[0].proof, ps[1].proof})};
    default:
      break;
  }
  if (ps.size() == 1) return {ps[0].sigma, ikd::apply(in, {ps[0].proof})};
  if (ps.size() != 2) throw InputError(std::string("deduction_export: unsupported rule ") + rule_name(in.rule));
  Multiset u = ms_union(ps[0].sigma, ps[1].sigma);
  std::vector<Proof> next;
  for (const auto& p : ps) next.push_back(weaken(p.proof, *ms_diff(u, p.sigma)));
  return {u, ikd::apply(in, std::move(next))};
}

}  // namespace

bool is_variant(const Formula& a, const Formula& b) {
  Formula cur = b;
  while (true) {
    if (cur == a) return true;
    if (cur.is(Op::Nabla)) cur = cur.body();
    else if (cur.is(Op::Dyn) && cur.lhs().is(Op::Top)) cur = cur.rhs();
    else return false;
  }
}

Proof derive_variant(const Formula& a, const Formula& b) {
  if (b == a) return hypothesis(Sequent({}, a));
  if (b.is(Op::Nabla)) return ikd::apply(mk::nab(), {derive_variant(a, b.body())});
  if (b.is(Op::Dyn) && b.lhs().is(Op::Top)) return box_mono(derive_variant(a, b.rhs()));
  throw InputError("'" + b.str() + "' is not a variant of '" + a.str() + "'");
}

DeductionResult deduction_export(const Proof& t, const Formula& a) {
  Calculus src = Calculus::of(Base::IKD).with_cut().with_hypotheses();
  if (auto f = check_proof(t, src)) throw InputError("deduction_export: the proof does not check " + f->describe());
  Exported e = ex(t, a);
  Multiset sigma = ms_set(e.sigma);
  for (const auto& s : sigma)
    if (!is_variant(a, s)) throw InternalError("deduction_export produced the non-variant '" + s.str() + "'");
  Proof p = detail::raw_eliminate_cuts(e.proof, CutStrategy::LeftFirst);
  p = detail::raw_contract_to(p, ms_sum(t->seq.ant, sigma));
  if (!(p->seq == Sequent(ms_sum(t->seq.ant, sigma), t->seq.suc)))
    throw InternalError("deduction_export produced '" + p->seq.str() + "'");
  require_checks(p, Calculus::of(Base::IKD), "deduction_export");
  return {sigma, p};
}

Proof deduction_import(const Formula& a, const Multiset& sigma, const Proof& t) {
  if (auto f = check_proof(t, Calculus::of(Base::IKD).with_cut().with_hypotheses()))
    throw InputError("deduction_import: the proof does not check " + f->describe());
  if (!ms_includes(t->seq.ant, ms(sigma)))
    throw InputError("deduction_import: the side formulas are not part of '" + t->seq.str() + "'");
  Proof cur = t;
  for (const auto& b : sigma) cur = ikd::apply(mk::cut(b), {derive_variant(a, b), cur});
  require_checks(cur, Calculus::of(Base::IKD).with_cut().with_hypotheses(), "deduction_import");
  return cur;
}

}  // namespace ikd
