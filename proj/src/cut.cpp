#include <string>

#include "transform_internal.hpp"

namespace ikd {

namespace detail {

namespace {

struct Measure {
  int rank;
  int heights;
  auto operator<=>(const Measure&) const = default;
};

bool right_intro(Rule r) {
  return r == Rule::RTop || r == Rule::RAnd || r == Rule::ROr1 || r == Rule::ROr2 || r == Rule::RDynImp ||
         r == Rule::RHeytImp;
}

bool left_intro(Rule r) {
  return r == Rule::LAndN || r == Rule::LOrN || r == Rule::LDynImpN || r == Rule::LHeytImpN;
}

class Cutter {
 public:
  explicit Cutter(CutStrategy s) : strategy_(s) {}

  Proof run(const Proof& d1, const Proof& d2, int n, const Measure* parent) {
    if (d1->hypothesis || d2->hypothesis) throw InputError("cut elimination does not apply to hypothesis leaves");
    if (!d1->seq.suc) throw InternalError("cut: the left proof '" + d1->seq.str() + "' has no cut formula");
    const Formula a = *d1->seq.suc;
    const Formula na = nabla(a, n);
    auto phi = ms_remove(d2->seq.ant, na);
    if (!phi) throw InternalError("cut: '" + d2->seq.str() + "' lacks '" + na.str() + "'");
    Measure m{rank(a), d1->height + d2->height};
    if (parent && !(m < *parent))
      throw InternalError("cut elimination measure did not decrease at cut formula '" + a.str() + "'");
    Sequent want(ms_sum(*phi, ms_nabla(d1->seq.ant, n)), d2->seq.suc);
    Proof out = dispatch(d1, d2, n, na, *phi, m);
    if (!(out->seq == want))
      throw InternalError("cut elimination produced '" + out->seq.str() + "' instead of '" + want.str() + "'");
    return out;
  }

 private:
  Proof dispatch(const Proof& d1, const Proof& d2, int n, const Formula& na, const Multiset& phi, const Measure& m) {
    const Rule r2 = d2->inst.rule;
    const bool principal_in_d2 = left_intro(r2) && *d2->inst.principal == na;
    if (strategy_ == CutStrategy::RightFirst && !principal_in_d2 && !is_axiom(r2) && !(r2 == Rule::N && n == 0))
      return right(d1, d2, n, na, m);
    if (!right_intro(d1->inst.rule)) return left(d1, d2, n, phi, m);
    if (!principal_in_d2) return right(d1, d2, n, na, m);
    return principal(d1, d2, n, phi, m);
  }

  // The cut formula is not principal in d1.
  Proof left(const Proof& d1, const Proof& d2, int n, const Multiset& phi, const Measure& m) {
    const RuleInstance& in = d1->inst;
    const auto& ps = d1->premises;
    const int r = in.exponent();
    switch (in.rule) {
      case Rule::IdP:
        return d2;
      case Rule::Rw: {
        Proof p = weaken(nabla_times(ps[0], n), phi);
        if (d2->seq.suc) p = apply(mk::rw(*d2->seq.suc), {p});
        return p;
      }
      case Rule::LW:
        return weaken(run(ps[0], d2, n, &m), ms_nabla(*in.intro, n));
      case Rule::LAndN:
        return apply(mk::land(n + r, nabla(*in.principal, n)), {run(ps[0], d2, n, &m)});
      case Rule::LOrN:
        return apply(mk::lor(n + r, nabla(*in.principal, n)), {run(ps[0], d2, n, &m), run(ps[1], d2, n, &m)});
      case Rule::LDynImpN:
        return apply(mk::ldyn(n + r, nabla(*in.principal, n)),
                     {weaken(nabla_times(ps[0], n), phi), run(ps[1], d2, n, &m)});
      case Rule::LHeytImpN:
        return apply(mk::lheyt(n + r, nabla(*in.principal, n)),
                     {weaken(nabla_times(ps[0], n), phi), run(ps[1], d2, n, &m)});
      case Rule::N:
        return run(ps[0], d2, n + 1, &m);
      default:
        throw InternalError(std::string("cut: unexpected last rule ") + rule_name(in.rule) + " in the left proof");
    }
  }

  // The cut formula is not principal in d2: push the cut into d2.
  Proof right(const Proof& d1, const Proof& d2, int n, const Formula& na, const Measure& m) {
    const RuleInstance& in = d2->inst;
    const auto& ps = d2->premises;
    switch (in.rule) {
      case Rule::LW:
        if (auto rest = ms_remove(*in.intro, na)) return weaken(ps[0], ms_sum(*rest, ms_nabla(d1->seq.ant, n)));
        return weaken(run(d1, ps[0], n, &m), *in.intro);
      case Rule::RDynImp:
        return apply(in, {run(d1, ps[0], n + 1, &m)});
      case Rule::N:
        if (n == 0) throw InternalError("cut: N below an un-nabla'd cut formula");
        return apply(in, {run(d1, ps[0], n - 1, &m)});
      default:
        break;
    }
    if (is_axiom(in.rule))
      throw InternalError("cut: the axiom '" + d2->seq.str() + "' cannot contain the cut formula '" + na.str() + "'");
    std::vector<Proof> next;
    for (const auto& p : ps) next.push_back(run(d1, p, n, &m));
    return apply(in, std::move(next));
  }

  // The cut formula is principal on both sides.
  Proof principal(const Proof& d1, const Proof& d2, int n, const Multiset& phi, const Measure& m) {
    const auto& l = d1->premises;
    const auto& r = d2->premises;
    const Multiset want = ms_sum(phi, ms_nabla(d1->seq.ant, n));
    switch (d1->inst.rule) {
      case Rule::RAnd: {
        Proof x = run(l[0], r[0], n, &m);
        return raw_contract_to(run(l[1], x, n, &m), want);
      }
      case Rule::ROr1:
        return run(l[0], r[0], n, &m);
      case Rule::ROr2:
        return run(l[0], r[1], n, &m);
      case Rule::RDynImp: {
        Proof e = run(d1, r[0], n, &m);
        Proof f = run(d1, r[1], n, &m);
        Proof d = run(l[0], f, n - 1, &m);
        return raw_contract_to(run(e, d, 0, &m), want);
      }
      case Rule::RHeytImp: {
        Proof e = run(d1, r[0], n, &m);
        Proof d = run(l[0], r[1], n, &m);
        return raw_contract_to(run(e, d, 0, &m), want);
      }
      default:
        throw InternalError(std::string("cut: no principal reduction for ") + rule_name(d1->inst.rule));
    }
  }

  CutStrategy strategy_;
};

}  // namespace

Proof raw_cut(const Proof& d1, const Proof& d2, int n, CutStrategy s) { return Cutter(s).run(d1, d2, n, nullptr); }

Proof raw_eliminate_cuts(const Proof& t, CutStrategy s) {
  if (t->hypothesis) throw InputError("cut elimination does not apply to hypothesis leaves");
  std::vector<Proof> ps;
  bool same = true;
  for (const auto& p : t->premises) {
    ps.push_back(raw_eliminate_cuts(p, s));
    same = same && ps.back() == p;
  }
  if (t->inst.rule == Rule::Cut) return raw_cut(ps[0], ps[1], t->inst.cut_n(), s);
  if (same) return t;
  return apply(t->inst, std::move(ps));
}

}  // namespace detail

namespace {

Calculus cut_free_target(const Proof& t, const char* what) {
  Calculus ikds = Calculus::of(Base::IKDS).with_cut();
  if (!check_proof(t, ikds)) return Calculus::of(Base::IKDS);
  if (auto f = check_proof(t, Calculus::of(Base::IKD).with_cut()))
    throw InputError(std::string(what) + ": the proof does not check in IKD " + f->describe());
  return Calculus::of(Base::IKD);
}

}  // namespace

Proof cut_once(const Proof& d1, const Proof& d2, int n, CutStrategy s) {
  for (const Proof* d : {&d1, &d2})
    if (auto f = check_proof(*d, Calculus::of(Base::IKD)))
      throw InputError("cut_once: a premise does not check cut-free in IKD " + f->describe());
  if (n < 0) throw InputError("cut_once: negative exponent");
  if (!d1->seq.suc) throw InputError("cut_once: the left proof has an empty succedent");
  if (!ms_contains(d2->seq.ant, nabla(*d1->seq.suc, n)))
    throw InputError("cut_once: '" + d2->seq.str() + "' lacks '" + nabla(*d1->seq.suc, n).str() + "'");
  Proof out = detail::raw_cut(d1, d2, n, s);
  require_checks(out, Calculus::of(Base::IKD), "cut elimination");
  return out;
}

Proof eliminate_cuts(const Proof& t, CutStrategy s) {
  if (uses_hypotheses(t)) throw InputError("eliminate_cuts: the proof has hypothesis leaves");
  Calculus target = cut_free_target(t, "eliminate_cuts");
  Proof out = detail::raw_eliminate_cuts(t, s);
  if (!(out->seq == t->seq)) throw InternalError("cut elimination changed the endsequent");
  require_checks(out, target, "cut elimination");
  return out;
}

}  // namespace ikd
