#include "ikd/kernel.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace ikd {

Calculus Calculus::of(Base b) {
  Calculus c;
  c.base = b;
  c.allow_cut = b == Base::STLNH || b == Base::STLN;
  c.allow_hypotheses = false;
  return c;
}

Calculus Calculus::with_cut(bool on) const {
  Calculus c = *this;
  c.allow_cut = on;
  return c;
}

Calculus Calculus::with_hypotheses(bool on) const {
  Calculus c = *this;
  c.allow_hypotheses = on;
  return c;
}

const char* base_name(Base b) {
  switch (b) {
    case Base::IKD: return "IKD";
    case Base::IKDS: return "IKDS";
    case Base::STLNH: return "STLNH";
    case Base::STLN: return "STLN";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<Rule, const char*>, 24> kRuleNames{{
    {Rule::IdP, "IdP"},         {Rule::LBot, "LBot"},
    {Rule::RTop, "RTop"},       {Rule::LW, "LW"},
    {Rule::Rw, "Rw"},           {Rule::LAndN, "LAndN"},
    {Rule::RAnd, "RAnd"},       {Rule::LOrN, "LOrN"},
    {Rule::ROr1, "ROr1"},       {Rule::ROr2, "ROr2"},
    {Rule::LDynImpN, "LDynImpN"}, {Rule::RDynImp, "RDynImp"},
    {Rule::LHeytImpN, "LHeytImpN"}, {Rule::RHeytImp, "RHeytImp"},
    {Rule::N, "N"},             {Rule::Lc, "Lc"},
    {Rule::Cut, "Cut"},         {Rule::LAnd1, "LAnd1"},
    {Rule::LAnd2, "LAnd2"},     {Rule::LOr, "LOr"},
    {Rule::LDynImp, "LDynImp"}, {Rule::LHeytImp, "LHeytImp"},
    {Rule::Lw, "Lw"},           {Rule::Id, "Id"},
}};

bool needs_n(Rule r) {
  return r == Rule::LAndN || r == Rule::LOrN || r == Rule::LDynImpN || r == Rule::LHeytImpN;
}

bool needs_principal(Rule r) {
  switch (r) {
    case Rule::LW:
    case Rule::Lw:
    case Rule::Rw:
    case Rule::N:
    case Rule::Cut:
      return false;
    default:
      return true;
  }
}

bool needs_intro(Rule r) { return r == Rule::LW || r == Rule::Lw || r == Rule::Rw; }

std::string fstr(const Formula& f) { return "'" + f.str() + "'"; }

}  // namespace

const char* rule_name(Rule r) {
  for (auto& [k, v] : kRuleNames)
    if (k == r) return v;
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
  for (auto& [k, v] : kRuleNames)
    if (s == v) return k;
  return std::nullopt;
}

bool is_axiom(Rule r) { return r == Rule::IdP || r == Rule::Id || r == Rule::LBot || r == Rule::RTop; }

bool rule_in(Rule r, const Calculus& c) {
  if (r == Rule::Cut) return c.allow_cut;
  if (r == Rule::LHeytImpN || r == Rule::RHeytImp || r == Rule::LHeytImp) {
    if (c.star()) return false;
  }
  switch (r) {
    case Rule::LBot:
    case Rule::RTop:
    case Rule::Rw:
    case Rule::RAnd:
    case Rule::ROr1:
    case Rule::ROr2:
    case Rule::RDynImp:
    case Rule::RHeytImp:
    case Rule::N:
      return true;
    case Rule::IdP:
    case Rule::LW:
    case Rule::LAndN:
    case Rule::LOrN:
    case Rule::LDynImpN:
    case Rule::LHeytImpN:
      return !c.stl();
    default:
      return c.stl();
  }
}

Proof raw_node(Sequent s, RuleInstance inst, std::vector<Proof> premises) {
  auto n = std::make_shared<ProofNode>();
  n->seq = std::move(s);
  n->inst = std::move(inst);
  n->premises = std::move(premises);
  int h = -1;
  for (const auto& p : n->premises) {
    h = std::max(h, p->height);
    n->size += p->size;
  }
  n->height = h + 1;
  return n;
}

Proof hypothesis(Sequent s) {
  auto n = std::make_shared<ProofNode>();
  n->seq = std::move(s);
  n->hypothesis = true;
  return n;
}

namespace {

struct Fail {
  std::string msg;
};

Inferred bad(std::string m) { return {std::nullopt, std::move(m)}; }

std::string shape_error(Rule r, const std::string& what) { return std::string(rule_name(r)) + " " + what; }

// ant of a premise minus the listed formulas, or a violation
std::optional<Multiset> take(const Multiset& ant, std::initializer_list<Formula> fs) {
  std::optional<Multiset> cur = ant;
  for (const auto& f : fs) {
    cur = ms_remove(*cur, f);
    if (!cur) return std::nullopt;
  }
  return cur;
}

}  // namespace

Inferred infer_conclusion(const RuleInstance& inst, const std::vector<Sequent>& prem) {
  const Rule r = inst.rule;
  const char* rn = rule_name(r);
  if (needs_n(r) != inst.n.has_value())
    return bad(shape_error(r, needs_n(r) ? "requires field n" : "does not take field n"));
  if (inst.n && *inst.n < 0) return bad(shape_error(r, "requires n >= 0"));
  if (needs_principal(r) != inst.principal.has_value())
    return bad(shape_error(r, needs_principal(r) ? "requires field principal" : "does not take field principal"));
  if (needs_intro(r) != inst.intro.has_value())
    return bad(shape_error(r, needs_intro(r) ? "requires field intro" : "does not take field intro"));
  if ((r == Rule::Cut) != inst.cut_formula.has_value())
    return bad(shape_error(r, r == Rule::Cut ? "requires field cut_formula" : "does not take field cut_formula"));
  if (r != Rule::Cut && inst.cut_exponent) return bad(shape_error(r, "does not take field cut_exponent"));
  if (inst.cut_exponent && *inst.cut_exponent < 0) return bad("Cut requires cut_exponent >= 0");

  std::size_t arity = 1;
  switch (r) {
    case Rule::IdP:
    case Rule::Id:
    case Rule::LBot:
    case Rule::RTop:
      arity = 0;
      break;
    case Rule::RAnd:
    case Rule::LOrN:
    case Rule::LDynImpN:
    case Rule::LHeytImpN:
    case Rule::Cut:
    case Rule::LOr:
    case Rule::LDynImp:
    case Rule::LHeytImp:
      arity = 2;
      break;
    default:
      break;
  }
  if (prem.size() != arity) {
    std::string word = arity == 0 ? "no premises" : arity == 1 ? "one premise" : "two premises";
    return bad(std::string(rn) + " requires " + word);
  }

  const Formula P = inst.principal.value_or(Formula());
  auto core_of = [&](Op want, int depth) -> std::optional<Formula> {
    auto sp = strip_nabla(P);
    if (sp.depth != depth || !sp.core.is(want)) return std::nullopt;
    return sp.core;
  };
  const int n = inst.exponent();

  switch (r) {
    case Rule::IdP:
      if (!P.is(Op::Atom)) return bad("IdP principal must be an atom, got " + fstr(P));
      return {Sequent({P}, P), {}};
    case Rule::Id:
      return {Sequent({P}, P), {}};
    case Rule::LBot:
      if (!P.is(Op::Bot)) return bad("LBot principal must be F");
      return {Sequent({P}, std::nullopt), {}};
    case Rule::RTop:
      if (!P.is(Op::Top)) return bad("RTop principal must be T");
      return {Sequent({}, P), {}};
    case Rule::LW:
    case Rule::Lw: {
      if (inst.intro->empty()) return bad(std::string(rn) + " requires a nonempty intro");
      if (r == Rule::Lw && inst.intro->size() != 1) return bad("Lw introduces exactly one formula");
      return {Sequent(ms_sum(prem[0].ant, ms(*inst.intro)), prem[0].suc), {}};
    }
    case Rule::Rw: {
      if (inst.intro->size() != 1) return bad("Rw introduces exactly one formula");
      if (prem[0].suc) return bad("Rw premise must have an empty succedent");
      return {Sequent(prem[0].ant, (*inst.intro)[0]), {}};
    }
    case Rule::LAndN: {
      auto c = core_of(Op::And, n);
      if (!c) return bad("LAndN principal " + fstr(P) + " is not #^n(A & B) for n = " + std::to_string(n));
      auto rest = take(prem[0].ant, {nabla(c->lhs(), n), nabla(c->rhs(), n)});
      if (!rest) return bad("LAndN premise lacks " + fstr(nabla(c->lhs(), n)) + " and " + fstr(nabla(c->rhs(), n)));
      return {Sequent(ms_add(*rest, P), prem[0].suc), {}};
    }
    case Rule::LAnd1:
    case Rule::LAnd2: {
      if (!P.is(Op::And)) return bad(std::string(rn) + " principal must be a conjunction");
      const Formula& side = r == Rule::LAnd1 ? P.lhs() : P.rhs();
      auto rest = ms_remove(prem[0].ant, side);
      if (!rest) return bad(std::string(rn) + " premise lacks " + fstr(side));
      return {Sequent(ms_add(*rest, P), prem[0].suc), {}};
    }
    case Rule::RAnd: {
      if (!P.is(Op::And)) return bad("RAnd principal must be a conjunction");
      if (prem[0].ant != prem[1].ant) return bad("RAnd premises must share the antecedent");
      if (prem[0].suc != P.lhs() || prem[1].suc != P.rhs()) return bad("RAnd premise succedents must be the conjuncts");
      return {Sequent(prem[0].ant, P), {}};
    }
    case Rule::LOrN:
    case Rule::LOr: {
      int k = r == Rule::LOrN ? n : 0;
      auto c = core_of(Op::Or, k);
      if (r == Rule::LOr && !P.is(Op::Or)) c.reset();
      if (!c) return bad(std::string(rn) + " principal " + fstr(P) + " has the wrong shape");
      auto r0 = ms_remove(prem[0].ant, nabla(c->lhs(), k));
      auto r1 = ms_remove(prem[1].ant, nabla(c->rhs(), k));
      if (!r0) return bad(std::string(rn) + " left premise lacks " + fstr(nabla(c->lhs(), k)));
      if (!r1) return bad(std::string(rn) + " right premise lacks " + fstr(nabla(c->rhs(), k)));
      if (*r0 != *r1) return bad(std::string(rn) + " premise contexts differ");
      if (prem[0].suc != prem[1].suc) return bad(std::string(rn) + " premise succedents differ");
      return {Sequent(ms_add(*r0, P), prem[0].suc), {}};
    }
    case Rule::ROr1:
    case Rule::ROr2: {
      if (!P.is(Op::Or)) return bad(std::string(rn) + " principal must be a disjunction");
      const Formula& side = r == Rule::ROr1 ? P.lhs() : P.rhs();
      if (prem[0].suc != side) return bad(std::string(rn) + " premise succedent must be " + fstr(side));
      return {Sequent(prem[0].ant, P), {}};
    }
    case Rule::LDynImpN: {
      auto c = core_of(Op::Dyn, n + 1);
      if (!c) return bad("LDynImpN principal " + fstr(P) + " is not #^(n+1)(A -> B) for n = " + std::to_string(n));
      if (!ms_contains(prem[0].ant, P)) return bad("LDynImpN left premise must retain the principal formula");
      if (prem[0].suc != nabla(c->lhs(), n)) return bad("LDynImpN left premise succedent must be " + fstr(nabla(c->lhs(), n)));
      if (prem[1].ant != ms_add(prem[0].ant, nabla(c->rhs(), n)))
        return bad("LDynImpN right premise antecedent must be the conclusion antecedent plus " + fstr(nabla(c->rhs(), n)));
      return {Sequent(prem[0].ant, prem[1].suc), {}};
    }
    case Rule::LDynImp: {
      if (!P.is(Op::Nabla) || !P.body().is(Op::Dyn)) return bad("LDynImp principal must be #(A -> B)");
      const Formula& c = P.body();
      if (prem[0].suc != c.lhs()) return bad("LDynImp left premise succedent must be " + fstr(c.lhs()));
      if (prem[1].ant != ms_add(prem[0].ant, c.rhs())) return bad("LDynImp right premise must be the left context plus " + fstr(c.rhs()));
      return {Sequent(ms_add(prem[0].ant, P), prem[1].suc), {}};
    }
    case Rule::RDynImp: {
      if (!P.is(Op::Dyn)) return bad("RDynImp principal must be A -> B");
      if (prem[0].suc != P.rhs()) return bad("RDynImp premise succedent must be " + fstr(P.rhs()));
      auto rest = ms_remove(prem[0].ant, P.lhs());
      if (!rest) return bad("RDynImp premise lacks " + fstr(P.lhs()));
      Multiset g;
      for (const auto& f : *rest) {
        if (!f.is(Op::Nabla)) return bad("RDynImp premise context must be #-wrapped, found " + fstr(f));
        g.push_back(f.body());
      }
      return {Sequent(std::move(g), P), {}};
    }
    case Rule::LHeytImpN: {
      auto c = core_of(Op::Heyt, n);
      if (!c) return bad("LHeytImpN principal " + fstr(P) + " is not #^n(A => B) for n = " + std::to_string(n));
      auto g = ms_remove(prem[0].ant, P);
      if (!g) return bad("LHeytImpN left premise must retain the principal formula");
      if (prem[0].suc != nabla(c->lhs(), n)) return bad("LHeytImpN left premise succedent must be " + fstr(nabla(c->lhs(), n)));
      if (prem[1].ant != ms_add(*g, nabla(c->rhs(), n)))
        return bad("LHeytImpN right premise antecedent must be the context plus " + fstr(nabla(c->rhs(), n)));
      return {Sequent(prem[0].ant, prem[1].suc), {}};
    }
    case Rule::LHeytImp: {
      if (!P.is(Op::Heyt)) return bad("LHeytImp principal must be A => B");
      if (prem[0].suc != P.lhs()) return bad("LHeytImp left premise succedent must be " + fstr(P.lhs()));
      if (prem[1].ant != ms_add(prem[0].ant, P.rhs())) return bad("LHeytImp right premise must be the left context plus " + fstr(P.rhs()));
      return {Sequent(ms_add(prem[0].ant, P), prem[1].suc), {}};
    }
    case Rule::RHeytImp: {
      if (!P.is(Op::Heyt)) return bad("RHeytImp principal must be A => B");
      if (prem[0].suc != P.rhs()) return bad("RHeytImp premise succedent must be " + fstr(P.rhs()));
      auto rest = ms_remove(prem[0].ant, P.lhs());
      if (!rest) return bad("RHeytImp premise lacks " + fstr(P.lhs()));
      return {Sequent(*rest, P), {}};
    }
    case Rule::N: {
      std::optional<Formula> s;
      if (prem[0].suc) s = nabla(*prem[0].suc);
      return {Sequent(ms_nabla(prem[0].ant), s), {}};
    }
    case Rule::Lc: {
      if (ms_count(prem[0].ant, P) < 2) return bad("Lc premise must contain two copies of " + fstr(P));
      return {Sequent(*ms_remove(prem[0].ant, P), prem[0].suc), {}};
    }
    case Rule::Cut: {
      const Formula& A = *inst.cut_formula;
      int k = inst.cut_n();
      if (prem[0].suc != A) return bad("Cut left premise succedent must be the cut formula " + fstr(A));
      auto phi = ms_remove(prem[1].ant, nabla(A, k));
      if (!phi) return bad("Cut right premise lacks " + fstr(nabla(A, k)));
      return {Sequent(ms_sum(*phi, ms_nabla(prem[0].ant, k)), prem[1].suc), {}};
    }
  }
  return bad("unknown rule");
}

Proof apply(const RuleInstance& inst, std::vector<Proof> premises) {
  std::vector<Sequent> ps;
  ps.reserve(premises.size());
  for (const auto& p : premises) ps.push_back(p->seq);
  auto res = infer_conclusion(inst, ps);
  if (!res.conclusion) {
    std::string ctx;
    for (const auto& s : ps) ctx += " [" + s.str() + "]";
    throw InternalError("rule application failed: " + res.violation + "; premises:" + ctx);
  }
  return raw_node(std::move(*res.conclusion), inst, std::move(premises));
}

std::optional<std::string> check_instance(const Sequent& conclusion, const RuleInstance& inst,
                                          const std::vector<Sequent>& premises, const Calculus& calc) {
  if (!rule_in(inst.rule, calc)) {
    if (inst.rule == Rule::Cut) return std::string("Cut is not allowed (allow_cut is false)");
    return std::string(rule_name(inst.rule)) + " is not a rule of " + base_name(calc.base);
  }
  if (inst.rule == Rule::Cut && calc.stl() && inst.cut_n() != 0)
    return std::string("Cut in ") + base_name(calc.base) + " has exponent 0";
  if (calc.star()) {
    if (!is_star(conclusion)) return std::string("=> is not in the language of ") + base_name(calc.base);
    for (const auto& p : premises)
      if (!is_star(p)) return std::string("=> is not in the language of ") + base_name(calc.base);
    if (inst.cut_formula && !is_star(*inst.cut_formula))
      return std::string("=> is not in the language of ") + base_name(calc.base);
  }
  auto res = infer_conclusion(inst, premises);
  if (!res.conclusion) return res.violation;
  if (!(*res.conclusion == conclusion))
    return std::string(rule_name(inst.rule)) + " yields '" + res.conclusion->str() + "', not '" + conclusion.str() + "'";
  return std::nullopt;
}

std::string CheckFailure::describe() const {
  std::ostringstream os;
  os << "at [";
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path[i];
  os << "]: " << violation;
  return os.str();
}

namespace {

std::optional<CheckFailure> check_rec(const Proof& t, const Calculus& calc, std::vector<int>& path) {
  if (t->hypothesis) {
    if (!calc.allow_hypotheses) return CheckFailure{path, "hypothesis leaf '" + t->seq.str() + "' not allowed"};
    if (calc.star() && !is_star(t->seq))
      return CheckFailure{path, std::string("=> is not in the language of ") + base_name(calc.base)};
    return std::nullopt;
  }
  std::vector<Sequent> ps;
  for (const auto& p : t->premises) ps.push_back(p->seq);
  if (auto v = check_instance(t->seq, t->inst, ps, calc)) return CheckFailure{path, *v};
  for (std::size_t i = 0; i < t->premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto f = check_rec(t->premises[i], calc, path)) return f;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::optional<CheckFailure> check_proof(const Proof& t, const Calculus& calc) {
  std::vector<int> path;
  return check_rec(t, calc, path);
}

void require_checks(const Proof& t, const Calculus& calc, const std::string& what) {
  if (auto f = check_proof(t, calc)) throw InternalError(what + " produced a proof that does not check " + f->describe());
}

// ---------------------------------------------------------------- enumeration

std::vector<std::pair<RuleInstance, std::vector<Sequent>>> applicable_instances(const Sequent& g, const Calculus& calc) {
  std::vector<std::pair<RuleInstance, std::vector<Sequent>>> out;
  if (calc.star() && !is_star(g)) return out;
  const bool stl = calc.stl();
  auto add = [&](RuleInstance i, std::vector<Sequent> ps) { out.emplace_back(std::move(i), std::move(ps)); };

  // axioms
  if (g.ant.size() == 1 && g.suc && g.ant[0] == *g.suc) {
    if (stl) add(mk::id(*g.suc), {});
    else if (g.suc->is(Op::Atom)) add(mk::idp(*g.suc), {});
  }
  if (g.ant.size() == 1 && !g.suc && g.ant[0].is(Op::Bot)) add(mk::lbot(), {});
  if (g.ant.empty() && g.suc && g.suc->is(Op::Top)) add(mk::rtop(), {});

  const Multiset distinct = ms_set(g.ant);

  // left rules
  for (const auto& f : distinct) {
    auto rest = *ms_remove(g.ant, f);
    if (!stl) {
      auto [n, c] = strip_nabla(f);
      switch (c.op()) {
        case Op::And:
          add(mk::land(n, f), {Sequent(ms_sum(rest, ms({nabla(c.lhs(), n), nabla(c.rhs(), n)})), g.suc)});
          break;
        case Op::Or:
          add(mk::lor(n, f), {Sequent(ms_add(rest, nabla(c.lhs(), n)), g.suc), Sequent(ms_add(rest, nabla(c.rhs(), n)), g.suc)});
          break;
        case Op::Dyn:
          if (n >= 1)
            add(mk::ldyn(n - 1, f), {Sequent(g.ant, nabla(c.lhs(), n - 1)), Sequent(ms_add(g.ant, nabla(c.rhs(), n - 1)), g.suc)});
          break;
        case Op::Heyt:
          if (!calc.star())
            add(mk::lheyt(n, f), {Sequent(g.ant, nabla(c.lhs(), n)), Sequent(ms_add(rest, nabla(c.rhs(), n)), g.suc)});
          break;
        default:
          break;
      }
    } else {
      switch (f.op()) {
        case Op::And:
          add(mk::land1(f), {Sequent(ms_add(rest, f.lhs()), g.suc)});
          add(mk::land2(f), {Sequent(ms_add(rest, f.rhs()), g.suc)});
          break;
        case Op::Or:
          add(mk::lor_stl(f), {Sequent(ms_add(rest, f.lhs()), g.suc), Sequent(ms_add(rest, f.rhs()), g.suc)});
          break;
        case Op::Nabla:
          if (f.body().is(Op::Dyn))
            add(mk::ldyn_stl(f), {Sequent(rest, f.body().lhs()), Sequent(ms_add(rest, f.body().rhs()), g.suc)});
          break;
        case Op::Heyt:
          if (!calc.star()) add(mk::lheyt_stl(f), {Sequent(rest, f.lhs()), Sequent(ms_add(rest, f.rhs()), g.suc)});
          break;
        default:
          break;
      }
    }
  }

  // right rules
  if (g.suc) {
    const Formula& s = *g.suc;
    switch (s.op()) {
      case Op::And:
        add(mk::rand(s), {Sequent(g.ant, s.lhs()), Sequent(g.ant, s.rhs())});
        break;
      case Op::Or:
        add(mk::ror(1, s), {Sequent(g.ant, s.lhs())});
        add(mk::ror(2, s), {Sequent(g.ant, s.rhs())});
        break;
      case Op::Dyn:
        add(mk::rdyn(s), {Sequent(ms_add(ms_nabla(g.ant), s.lhs()), s.rhs())});
        break;
      case Op::Heyt:
        if (!calc.star()) add(mk::rheyt(s), {Sequent(ms_add(g.ant, s.lhs()), s.rhs())});
        break;
      default:
        break;
    }
  }

  // N
  bool all_nabla = std::all_of(g.ant.begin(), g.ant.end(), [](const Formula& f) { return f.is(Op::Nabla); });
  if (all_nabla && (!g.suc || g.suc->is(Op::Nabla))) {
    Multiset a;
    for (const auto& f : g.ant) a.push_back(f.body());
    std::optional<Formula> s;
    if (g.suc) s = g.suc->body();
    add(mk::nab(), {Sequent(std::move(a), s)});
  }

  // weakening, one formula at a time
  for (const auto& f : distinct) {
    if (stl) add(mk::lw_stl(f), {Sequent(*ms_remove(g.ant, f), g.suc)});
    else add(mk::lw({f}), {Sequent(*ms_remove(g.ant, f), g.suc)});
  }
  if (g.suc) add(mk::rw(*g.suc), {Sequent(g.ant, std::nullopt)});
  return out;
}

bool uses_cut(const Proof& t) {
  if (!t->hypothesis && t->inst.rule == Rule::Cut) return true;
  return std::any_of(t->premises.begin(), t->premises.end(), uses_cut);
}

bool uses_hypotheses(const Proof& t) {
  if (t->hypothesis) return true;
  return std::any_of(t->premises.begin(), t->premises.end(), uses_hypotheses);
}

bool mentions_heyting_rule(const Proof& t) {
  if (!t->hypothesis) {
    Rule r = t->inst.rule;
    if (r == Rule::LHeytImpN || r == Rule::RHeytImp || r == Rule::LHeytImp) return true;
  }
  return std::any_of(t->premises.begin(), t->premises.end(), mentions_heyting_rule);
}

int count_rule(const Proof& t, Rule r) {
  int c = (!t->hypothesis && t->inst.rule == r) ? 1 : 0;
  for (const auto& p : t->premises) c += count_rule(p, r);
  return c;
}

// ---------------------------------------------------------------- shorthands

namespace mk {
namespace {
RuleInstance with_p(Rule r, const Formula& p) {
  RuleInstance i;
  i.rule = r;
  i.principal = p;
  return i;
}
RuleInstance with_np(Rule r, int n, const Formula& p) {
  RuleInstance i = with_p(r, p);
  i.n = n;
  return i;
}
}  // namespace

RuleInstance idp(const Formula& p) { return with_p(Rule::IdP, p); }
RuleInstance lbot() { return with_p(Rule::LBot, bot()); }
RuleInstance rtop() { return with_p(Rule::RTop, top()); }
RuleInstance lw(Multiset sigma) {
  RuleInstance i;
  i.rule = Rule::LW;
  i.intro = ms(std::move(sigma));
  return i;
}
RuleInstance rw(const Formula& a) {
  RuleInstance i;
  i.rule = Rule::Rw;
  i.intro = Multiset{a};
  return i;
}
RuleInstance land(int n, const Formula& p) { return with_np(Rule::LAndN, n, p); }
RuleInstance rand(const Formula& p) { return with_p(Rule::RAnd, p); }
RuleInstance lor(int n, const Formula& p) { return with_np(Rule::LOrN, n, p); }
RuleInstance ror(int which, const Formula& p) { return with_p(which == 1 ? Rule::ROr1 : Rule::ROr2, p); }
RuleInstance ldyn(int n, const Formula& p) { return with_np(Rule::LDynImpN, n, p); }
RuleInstance rdyn(const Formula& p) { return with_p(Rule::RDynImp, p); }
RuleInstance lheyt(int n, const Formula& p) { return with_np(Rule::LHeytImpN, n, p); }
RuleInstance rheyt(const Formula& p) { return with_p(Rule::RHeytImp, p); }
RuleInstance nab() {
  RuleInstance i;
  i.rule = Rule::N;
  return i;
}
RuleInstance lc(const Formula& a) { return with_p(Rule::Lc, a); }
RuleInstance cut(const Formula& a, int n) {
  RuleInstance i;
  i.rule = Rule::Cut;
  i.cut_formula = a;
  if (n != 0) i.cut_exponent = n;
  return i;
}
RuleInstance land1(const Formula& p) { return with_p(Rule::LAnd1, p); }
RuleInstance land2(const Formula& p) { return with_p(Rule::LAnd2, p); }
RuleInstance lor_stl(const Formula& p) { return with_p(Rule::LOr, p); }
RuleInstance ldyn_stl(const Formula& p) { return with_p(Rule::LDynImp, p); }
RuleInstance lheyt_stl(const Formula& p) { return with_p(Rule::LHeytImp, p); }
RuleInstance lw_stl(const Formula& a) {
  RuleInstance i;
  i.rule = Rule::Lw;
  i.intro = Multiset{a};
  return i;
}
RuleInstance id(const Formula& a) { return with_p(Rule::Id, a); }
}  // namespace mk

// ---------------------------------------------------------------- derived proofs

Proof weaken(const Proof& d, const Multiset& sigma) {
  if (sigma.empty()) return d;
  if (!d->hypothesis && d->inst.rule == Rule::LW) return apply(mk::lw(ms_sum(*d->inst.intro, sigma)), {d->premises[0]});
  return apply(mk::lw(sigma), {d});
}

Proof weaken_to(const Proof& d, const Multiset& target) {
  auto extra = ms_diff(target, d->seq.ant);
  if (!extra) throw InternalError("weaken_to: '" + d->seq.str() + "' does not fit into a larger antecedent");
  return weaken(d, *extra);
}

Proof nabla_times(const Proof& d, int k) {
  Proof out = d;
  for (int i = 0; i < k; ++i) out = apply(mk::nab(), {out});
  return out;
}

Proof identity(const Formula& a) {
  switch (a.op()) {
    case Op::Atom:
      return apply(mk::idp(a), {});
    case Op::Bot:
      return apply(mk::rw(a), {apply(mk::lbot(), {})});
    case Op::Top:
      return apply(mk::lw({a}), {apply(mk::rtop(), {})});
    case Op::And: {
      auto l = weaken(identity(a.lhs()), {a.rhs()});
      auto r = weaken(identity(a.rhs()), {a.lhs()});
      return apply(mk::land(0, a), {apply(mk::rand(a), {l, r})});
    }
    case Op::Or:
      return apply(mk::lor(0, a), {apply(mk::ror(1, a), {identity(a.lhs())}), apply(mk::ror(2, a), {identity(a.rhs())})});
    case Op::Heyt: {
      auto l = weaken(identity(a.lhs()), {a});
      auto r = weaken(identity(a.rhs()), {a.lhs()});
      return apply(mk::rheyt(a), {apply(mk::lheyt(0, a), {l, r})});
    }
    case Op::Dyn: {
      auto na = nabla(a);
      auto l = weaken(identity(a.lhs()), {na});
      auto r = weaken(identity(a.rhs()), ms({a.lhs(), na}));
      return apply(mk::rdyn(a), {apply(mk::ldyn(0, na), {l, r})});
    }
    case Op::Nabla:
      return apply(mk::nab(), {identity(a.body())});
  }
  throw InternalError("identity: unknown formula");
}

Proof mp(const Formula& a, const Formula& b) {
  auto na = nabla(dimp(a, b));
  auto l = weaken(identity(a), {na});
  auto r = weaken(identity(b), ms({a, na}));
  return apply(mk::ldyn(0, na), {l, r});
}

Proof nabla_box_left(const Proof& d, const Formula& a) {
  auto gamma = ms_remove(d->seq.ant, a);
  if (!gamma) throw InputError("nabla_box_left: '" + a.str() + "' is not in the antecedent of '" + d->seq.str() + "'");
  auto nb = nabla(box(a));
  auto l = weaken(apply(mk::rtop(), {}), ms_add(*gamma, nb));
  auto r = weaken(d, {nb});
  return apply(mk::ldyn(0, nb), {l, r});
}

Proof box_mono(const Proof& d) {
  if (!d->seq.suc) throw InputError("box_mono: the proof needs a succedent formula");
  Proof cur = d;
  for (const auto& g : d->seq.ant) cur = nabla_box_left(cur, g);
  cur = weaken(cur, {top()});
  return apply(mk::rdyn(box(*d->seq.suc)), {cur});
}

Proof abstraction(const Proof& d, const Multiset& gamma, const Multiset& sigma, const Formula& a) {
  if (!d->seq.suc) throw InputError("abstraction: the proof needs a succedent formula");
  Multiset expect = ms_add(ms_sum(ms_nabla(gamma), ms(sigma)), a);
  if (d->seq.ant != expect) throw InputError("abstraction: antecedent of '" + d->seq.str() + "' is not #Gamma, Sigma, A");
  Proof cur = d;
  for (const auto& s : sigma) cur = nabla_box_left(cur, s);
  return apply(mk::rdyn(dimp(a, *d->seq.suc)), {cur});
}

}  // namespace ikd
