#include <algorithm>
#include <string>

#include "ikd/meta.hpp"

namespace ikd {

Formula HeytingPart::formula() const { return nabla(himp(a, b), m); }
Formula DynPart::formula() const { return nabla(dimp(c, d), n); }

Multiset VisserAntecedent::multiset() const {
  Multiset out;
  for (const auto& h : heyting_parts) out.push_back(h.formula());
  for (const auto& d : dyn_parts) out.push_back(d.formula());
  return ms(out);
}

Formula VisserAntecedent::to_formula() const {
  Formula out;
  auto add = [&](const Formula& f) { out = out ? conj(out, f) : f; };
  for (const auto& h : heyting_parts) add(h.formula());
  for (const auto& d : dyn_parts) add(d.formula());
  return out ? out : top();
}

const char* visser_mode_name(VisserMode m) {
  switch (m) {
    case VisserMode::Disjunctive: return "disj";
    case VisserMode::Implicative: return "imp";
    case VisserMode::Heyting: return "heyt";
  }
  return "?";
}

const char* verdict_kind_name(VisserVerdict::Kind k) {
  using K = VisserVerdict::Kind;
  switch (k) {
    case K::HeytingPremise: return "HeytingPremise";
    case K::DynPremise: return "DynPremise";
    case K::LeftDisjunct: return "LeftDisjunct";
    case K::RightDisjunct: return "RightDisjunct";
    case K::Residual: return "Residual";
  }
  return "?";
}

namespace {

using Kind = VisserVerdict::Kind;

// Peels exactly k outer nablas; nullopt when there are fewer.
std::optional<Formula> peel(Formula f, int k) {
  for (int i = 0; i < k; ++i) {
    if (!f.is(Op::Nabla)) return std::nullopt;
    f = f.body();
  }
  return f;
}

Op core_op(VisserMode m) {
  switch (m) {
    case VisserMode::Disjunctive: return Op::Or;
    case VisserMode::Implicative: return Op::Dyn;
    case VisserMode::Heyting: return Op::Heyt;
  }
  return Op::Or;
}

bool premise_kind(Kind k) { return k == Kind::HeytingPremise || k == Kind::DynPremise; }

struct Slot {
  bool heyt;
  int idx;
  int exp;
  Formula core;
  Formula formula() const { return nabla(core, exp); }
};

// Goal of the current subproof: the theorem's succedent shape, or the empty succedent reached through Rw.
enum class Goal { Disj, Imp, Heyt, Empty };

VisserVerdict run(const Proof& t, std::vector<Slot> slots, Goal g) {
  const RuleInstance& in = t->inst;
  const auto& ps = t->premises;
  auto find = [&](const Formula& f, bool heyt) -> const Slot& {
    for (const auto& s : slots)
      if (s.heyt == heyt && s.formula() == f) return s;
    throw InternalError("Visser extraction: principal '" + f.str() + "' is not an antecedent part");
  };
  switch (in.rule) {
    case Rule::LW: {
      for (const auto& f : *in.intro) {
        auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.formula() == f; });
        if (it == slots.end()) throw InternalError("Visser extraction: LW introduces '" + f.str() + "'");
        slots.erase(it);
      }
      VisserVerdict v = run(ps[0], slots, g);
      if (premise_kind(v.kind) || v.kind == Kind::LeftDisjunct || v.kind == Kind::RightDisjunct)
        v.proof = weaken(v.proof, *in.intro);
      return v;
    }
    case Rule::N: {
      for (auto& s : slots) s.exp -= 1;
      VisserVerdict v = run(ps[0], slots, g);
      if (v.kind == Kind::LeftDisjunct || v.kind == Kind::RightDisjunct)
        throw InternalError("Visser extraction: a disjunct verdict under N");
      if (premise_kind(v.kind)) v.proof = apply(mk::nab(), {v.proof});
      return v;
    }
    case Rule::Rw: {
      if (g == Goal::Disj) return {Kind::LeftDisjunct, -1, {}, {}, apply(mk::rw(t->seq.suc->lhs()), {ps[0]})};
      VisserVerdict v = run(ps[0], slots, Goal::Empty);
      if (!premise_kind(v.kind)) throw InternalError("Visser extraction: an empty succedent gave a non-premise verdict");
      return v;
    }
    case Rule::ROr1:
    case Rule::ROr2:
      if (g != Goal::Disj) break;
      return {in.rule == Rule::ROr1 ? Kind::LeftDisjunct : Kind::RightDisjunct, -1, {}, {}, ps[0]};
    case Rule::LHeytImpN:
      return {Kind::HeytingPremise, find(*in.principal, true).idx, {}, {}, ps[0]};
    case Rule::LDynImpN:
      return {Kind::DynPremise, find(*in.principal, false).idx, {}, {}, ps[0]};
    case Rule::RDynImp:
    case Rule::RHeytImp: {
      if (g != (in.rule == Rule::RDynImp ? Goal::Imp : Goal::Heyt)) break;
      VisserVerdict v{Kind::Residual, -1, {}, {}, ps[0]};
      for (const auto& s : slots) (s.heyt ? v.heyting_kept : v.dyn_kept).push_back(s.idx);
      std::sort(v.heyting_kept.begin(), v.heyting_kept.end());
      std::sort(v.dyn_kept.begin(), v.dyn_kept.end());
      return v;
    }
    default:
      break;
  }
  throw InternalError(std::string("Visser extraction: unexpected rule ") + rule_name(in.rule) + " at '" + t->seq.str() + "'");
}

VisserVerdict extract(const Proof& t, const VisserAntecedent& x, VisserMode mode, int k, const Calculus& calc) {
  if (k < 0) throw InputError("k must be nonnegative");
  if (mode == VisserMode::Disjunctive && k != 0) throw InputError("the disjunctive family takes no k");
  if (auto f = check_proof(t, calc))
    throw InputError(std::string("the proof does not check in ") + base_name(calc.base) + " " + f->describe());
  if (t->seq.ant != x.multiset())
    throw InputError("antecedent mismatch: the proof has '" + t->seq.str() + "' but the parts give '" +
                     Sequent(x.multiset()).str() + "'");
  for (const auto& h : x.heyting_parts)
    if (h.m < 0) throw InputError("exponents must be nonnegative");
  for (const auto& d : x.dyn_parts)
    if (d.n < 0) throw InputError("exponents must be nonnegative");
  auto core = t->seq.suc ? peel(*t->seq.suc, k) : std::nullopt;
  if (!core || !core->is(core_op(mode)))
    throw InputError(std::string("the succedent does not have the shape required by the ") + visser_mode_name(mode) +
                     " family with k = " + std::to_string(k));
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < x.heyting_parts.size(); ++i) {
    const auto& h = x.heyting_parts[i];
    slots.push_back({true, static_cast<int>(i), h.m, himp(h.a, h.b)});
  }
  for (std::size_t j = 0; j < x.dyn_parts.size(); ++j) {
    const auto& d = x.dyn_parts[j];
    slots.push_back({false, static_cast<int>(j), d.n, dimp(d.c, d.d)});
  }
  Goal g = mode == VisserMode::Disjunctive ? Goal::Disj : mode == VisserMode::Implicative ? Goal::Imp : Goal::Heyt;
  VisserVerdict v = run(t, slots, g);
  Sequent want = verdict_sequent(x, mode, k, *t->seq.suc, v);
  if (!(v.proof->seq == want))
    throw InternalError("Visser extraction produced '" + v.proof->seq.str() + "' instead of '" + want.str() + "'");
  require_checks(v.proof, calc, "Visser extraction");
  return v;
}

}  // namespace

Sequent verdict_sequent(const VisserAntecedent& x, VisserMode mode, int k, const Formula& goal, const VisserVerdict& v) {
  auto bad = [] { return InputError("the verdict does not fit the antecedent parts"); };
  switch (v.kind) {
    case Kind::HeytingPremise: {
      if (v.index < 0 || v.index >= static_cast<int>(x.heyting_parts.size())) throw bad();
      const auto& h = x.heyting_parts[v.index];
      return Sequent(x.multiset(), nabla(h.a, h.m));
    }
    case Kind::DynPremise: {
      if (v.index < 0 || v.index >= static_cast<int>(x.dyn_parts.size())) throw bad();
      const auto& d = x.dyn_parts[v.index];
      if (d.n < 1) throw bad();
      return Sequent(x.multiset(), nabla(d.c, d.n - 1));
    }
    case Kind::LeftDisjunct:
    case Kind::RightDisjunct:
      if (mode != VisserMode::Disjunctive || !goal.is(Op::Or)) throw bad();
      return Sequent(x.multiset(), v.kind == Kind::LeftDisjunct ? goal.lhs() : goal.rhs());
    case Kind::Residual: {
      auto core = peel(goal, k);
      if (mode == VisserMode::Disjunctive || !core || !core->binary()) throw bad();
      int off = mode == VisserMode::Implicative ? 1 : 0;
      Multiset ant{core->lhs()};
      for (int i : v.heyting_kept) {
        if (i < 0 || i >= static_cast<int>(x.heyting_parts.size()) || x.heyting_parts[i].m < k) throw bad();
        const auto& h = x.heyting_parts[i];
        ant.push_back(nabla(himp(h.a, h.b), h.m - k + off));
      }
      for (int j : v.dyn_kept) {
        if (j < 0 || j >= static_cast<int>(x.dyn_parts.size()) || x.dyn_parts[j].n < k) throw bad();
        const auto& d = x.dyn_parts[j];
        ant.push_back(nabla(dimp(d.c, d.d), d.n - k + off));
      }
      return Sequent(ant, core->rhs());
    }
  }
  throw bad();
}

VisserVerdict visser_disjunctive(const Proof& t, const VisserAntecedent& x) {
  return extract(t, x, VisserMode::Disjunctive, 0, Calculus::of(Base::IKD));
}

VisserVerdict visser_implicative(const Proof& t, const VisserAntecedent& x, int k) {
  return extract(t, x, VisserMode::Implicative, k, Calculus::of(Base::IKD));
}

VisserVerdict visser_heyting(const Proof& t, const VisserAntecedent& x, int k) {
  return extract(t, x, VisserMode::Heyting, k, Calculus::of(Base::IKD));
}

VisserVerdict visser_star(const Proof& t, const VisserAntecedent& x, VisserMode mode, int k) {
  if (mode == VisserMode::Heyting) throw InputError("the star families are disjunctive and implicative only");
  if (!x.heyting_parts.empty() || !is_star(t->seq)) throw InputError("star extraction needs =>-free input");
  for (const auto& d : x.dyn_parts)
    if (!is_star(d.formula())) throw InputError("star extraction needs =>-free input");
  VisserVerdict v = extract(t, x, mode, k, Calculus::of(Base::IKD));
  require_checks(v.proof, Calculus::of(Base::IKDS), "star Visser extraction");
  return v;
}

DisjunctSplit split_disjunction(const Proof& t) {
  if (!t->seq.ant.empty() || !t->seq.suc || !t->seq.suc->is(Op::Or))
    throw InputError("split_disjunction needs a proof of |- A | B, got '" + t->seq.str() + "'");
  bool star = !check_proof(t, Calculus::of(Base::IKDS));
  VisserVerdict v = extract(t, {}, VisserMode::Disjunctive, 0, Calculus::of(star ? Base::IKDS : Base::IKD));
  return {v.kind == Kind::LeftDisjunct, v.proof};
}

}  // namespace ikd
