#include <algorithm>
#include <string>

#include "ikd/meta.hpp"
#include "ikd/transform.hpp"

namespace ikd {

namespace {

struct Itp {
  Formula c;
  Proof l;  // Gamma1 => C
  Proof r;  // Gamma2, C => Delta
};

// p proves Sigma, D => X (or Sigma, E => X when has_d is false); the result proves Sigma, D & E => X.
Proof conj_left(const Proof& p, const Formula& d, const Formula& e, bool has_d) {
  return apply(mk::land(0, conj(d, e)), {weaken(p, {has_d ? e : d})});
}

Multiset minus(const Multiset& a, const Formula& f) { return *ms_remove(a, f); }

class Maehara {
 public:
  std::vector<std::string> trace;

  Itp go(const Proof& t, const Multiset& g1, const Multiset& g2) {
    if (ms_sum(g1, g2) != t->seq.ant) throw InternalError("interpolation split does not match '" + t->seq.str() + "'");
    const RuleInstance& in = t->inst;
    const auto& ps = t->premises;
    const auto& delta = t->seq.suc;
    const Formula P = in.principal.value_or(Formula());
    const bool first = P && ms_contains(g1, P);
    const int n = in.exponent();
    switch (in.rule) {
      case Rule::IdP:
        if (first) return note(t, "Gamma1", {P, t, t});
        return note(t, "Gamma2", {top(), rtop(), weaken(t, {top()})});
      case Rule::LBot:
        if (ms_contains(g1, bot())) return note(t, "Gamma1", {bot(), apply(mk::rw(bot()), {t}), t});
        return note(t, "Gamma2", {top(), rtop(), weaken(t, {top()})});
      case Rule::RTop:
        return note(t, "", {top(), rtop(), weaken(t, {top()})});
      case Rule::LW: {
        Multiset s1, s2, h1 = g1, h2 = g2;
        for (const auto& f : *in.intro) {
          if (auto r = ms_remove(h1, f)) {
            h1 = *r;
            s1.push_back(f);
          } else {
            h2 = minus(h2, f);
            s2.push_back(f);
          }
        }
        Itp d = go(ps[0], h1, h2);
        return {d.c, weaken(d.l, ms(s1)), weaken(d.r, ms(s2))};
      }
      case Rule::Rw: {
        Itp d = go(ps[0], g1, g2);
        return {d.c, d.l, apply(in, {d.r})};
      }
      case Rule::N: {
        Multiset b1, b2;
        for (const auto& f : g1) b1.push_back(f.body());
        for (const auto& f : g2) b2.push_back(f.body());
        Itp d = go(ps[0], ms(b1), ms(b2));
        return note(t, "", {nabla(d.c), apply(mk::nab(), {d.l}), apply(mk::nab(), {d.r})});
      }
      case Rule::RAnd: {
        Itp d = go(ps[0], g1, g2), e = go(ps[1], g1, g2);
        Formula c = conj(d.c, e.c);
        return note(t, "", {c, apply(mk::rand(c), {d.l, e.l}),
                            apply(in, {conj_left(d.r, d.c, e.c, true), conj_left(e.r, d.c, e.c, false)})});
      }
      case Rule::ROr1:
      case Rule::ROr2: {
        Itp d = go(ps[0], g1, g2);
        return {d.c, d.l, apply(in, {d.r})};
      }
      case Rule::RDynImp: {
        Itp d = go(ps[0], ms_nabla(g1), ms_add(ms_nabla(g2), delta->lhs()));
        Formula c = box(d.c);
        return note(t, "", {c, apply(mk::rdyn(c), {weaken(d.l, {top()})}), apply(in, {nabla_box_left(d.r, d.c)})});
      }
      case Rule::RHeytImp: {
        Itp d = go(ps[0], g1, ms_add(g2, delta->lhs()));
        return {d.c, d.l, apply(in, {d.r})};
      }
      case Rule::LAndN: {
        Multiset parts = ms({nabla(strip_nabla(P).core.lhs(), n), nabla(strip_nabla(P).core.rhs(), n)});
        if (first) {
          Itp d = go(ps[0], ms_sum(minus(g1, P), parts), g2);
          return note(t, "Gamma1", {d.c, apply(in, {d.l}), d.r});
        }
        Itp d = go(ps[0], g1, ms_sum(minus(g2, P), parts));
        return note(t, "Gamma2", {d.c, d.l, apply(in, {d.r})});
      }
      case Rule::LOrN: {
        Formula core = strip_nabla(P).core;
        Formula a = nabla(core.lhs(), n), b = nabla(core.rhs(), n);
        if (first) {
          Itp d = go(ps[0], ms_add(minus(g1, P), a), g2), e = go(ps[1], ms_add(minus(g1, P), b), g2);
          Formula c = disj(d.c, e.c);
          return note(t, "Gamma1", {c, apply(in, {apply(mk::ror(1, c), {d.l}), apply(mk::ror(2, c), {e.l})}),
                                    apply(mk::lor(0, c), {d.r, e.r})});
        }
        Itp d = go(ps[0], g1, ms_add(minus(g2, P), a)), e = go(ps[1], g1, ms_add(minus(g2, P), b));
        Formula c = conj(d.c, e.c);
        return note(t, "Gamma2", {c, apply(mk::rand(c), {d.l, e.l}),
                                  apply(in, {conj_left(d.r, d.c, e.c, true), conj_left(e.r, d.c, e.c, false)})});
      }
      case Rule::LDynImpN:
      case Rule::LHeytImpN: {
        const bool dyn = in.rule == Rule::LDynImpN;
        Formula b = nabla(strip_nabla(P).core.rhs(), n);
        if (first) {
          // the left premise is interpolated with the roles of the two sides exchanged
          Itp d = go(ps[0], g2, g1);
          Multiset rest1 = dyn ? g1 : minus(g1, P);
          Itp e = go(ps[1], ms_add(rest1, b), g2);
          Formula c = himp(d.c, e.c);
          Proof inner = apply(in, {d.r, weaken(e.l, {d.c})});
          Proof right = apply(mk::lheyt(0, c), {weaken(d.l, {c}), e.r});
          return note(t, "Gamma1", {c, apply(mk::rheyt(c), {inner}), right});
        }
        Itp d = go(ps[0], g1, g2);
        Multiset rest2 = dyn ? g2 : minus(g2, P);
        Itp e = go(ps[1], g1, ms_add(rest2, b));
        Formula c = conj(d.c, e.c);
        return note(t, "Gamma2", {c, apply(mk::rand(c), {d.l, e.l}),
                                  apply(in, {conj_left(d.r, d.c, e.c, true), conj_left(e.r, d.c, e.c, false)})});
      }
      default:
        break;
    }
    throw InputError(std::string("interpolation does not handle rule ") + rule_name(in.rule));
  }

 private:
  static Proof rtop() { return apply(mk::rtop(), {}); }

  Itp note(const Proof& t, const std::string& side, Itp r) {
    std::string line = rule_name(t->inst.rule);
    if (!side.empty()) line += " principal in " + side;
    trace.push_back(line + ": C = " + r.c.str());
    return r;
  }
};

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

InterpolationResult interpolate(const Proof& t, const std::vector<bool>& left) {
  if (auto f = check_proof(t, Calculus::of(Base::IKD)))
    throw InputError("interpolation needs a cut-free IKD proof " + f->describe());
  if (left.size() != t->seq.ant.size())
    throw InputError("the split labels " + std::to_string(left.size()) + " occurrences but the antecedent has " +
                     std::to_string(t->seq.ant.size()));
  Multiset g1, g2;
  for (std::size_t i = 0; i < left.size(); ++i) (left[i] ? g1 : g2).push_back(t->seq.ant[i]);
  g1 = ms(g1);
  g2 = ms(g2);
  Maehara m;
  Itp r = m.go(t, g1, g2);
  if (!(r.l->seq == Sequent(g1, r.c))) throw InternalError("interpolation left proof ends in '" + r.l->seq.str() + "'");
  if (!(r.r->seq == Sequent(ms_add(g2, r.c), t->seq.suc)))
    throw InternalError("interpolation right proof ends in '" + r.r->seq.str() + "'");
  require_checks(r.l, Calculus::of(Base::IKD), "interpolation");
  require_checks(r.r, Calculus::of(Base::IKD), "interpolation");
  auto shared = atoms(g2);
  if (t->seq.suc) shared.merge(atoms(*t->seq.suc));
  if (!subset(atoms(r.c), atoms(g1)) || !subset(atoms(r.c), shared))
    throw InternalError("interpolant '" + r.c.str() + "' violates the variable condition");
  return {r.c, r.l, r.r, std::move(m.trace)};
}

std::optional<InterpolationResult> interpolate_formula(const Formula& a, const Formula& b, const SearchBudget& budget) {
  auto found = prove(Sequent({a}, b), Calculus::of(Base::IKD), budget);
  if (!found.proof) return std::nullopt;
  return interpolate(*found.proof, {true});
}

DeductiveInterpolant deductive_interpolant(const Formula& a, const Formula& b, const Proof& t) {
  if (!(t->seq == Sequent({}, b))) throw InputError("the proof ends in '" + t->seq.str() + "' rather than |- " + b.str());
  DeductionResult ex = deduction_export(t, a);
  InterpolationResult craig = interpolate(ex.proof, std::vector<bool>(ex.proof->seq.ant.size(), true));
  const Formula& c = craig.interpolant;
  Proof from_a = deduction_import(a, ex.sigma, craig.left_proof);
  Proof to_b = deduction_import(c, {c}, craig.right_proof);
  auto va = atoms(a), vb = atoms(b), vc = atoms(c);
  if (!subset(vc, va) || !subset(vc, vb)) throw InternalError("deductive interpolant '" + c.str() + "' uses foreign atoms");
  return {c, ex.sigma, from_a, to_b, std::move(craig)};
}

}  // namespace ikd
