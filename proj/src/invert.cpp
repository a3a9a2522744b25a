#include <string>

#include "transform_internal.hpp"

namespace ikd {

namespace detail {

void require_height(const Proof& in, const Proof& out, const char* what) {
  if (out->height > in->height)
    throw InternalError(std::string(what) + " raised the height from " + std::to_string(in->height) + " to " +
                        std::to_string(out->height));
}

namespace {

enum class Kind { And, Or1, Or2, Heyt };

Multiset replacement(const Formula& t, Kind k) {
  auto [n, c] = strip_nabla(t);
  switch (k) {
    case Kind::And: return ms({nabla(c.lhs(), n), nabla(c.rhs(), n)});
    case Kind::Or1: return {nabla(c.lhs(), n)};
    case Kind::Or2:
    case Kind::Heyt: return {nabla(c.rhs(), n)};
  }
  return {};
}

Rule rule_of(Kind k) {
  switch (k) {
    case Kind::And: return Rule::LAndN;
    case Kind::Or1:
    case Kind::Or2: return Rule::LOrN;
    case Kind::Heyt: return Rule::LHeytImpN;
  }
  return Rule::LAndN;
}

Proof inv(const Proof& t, const Formula& target, Kind k) {
  if (t->hypothesis) throw InputError("inversion does not apply to hypothesis leaves");
  const RuleInstance& in = t->inst;
  const auto& ps = t->premises;
  Proof out;
  if (in.rule == Rule::LW) {
    if (auto rest = ms_remove(*in.intro, target)) out = weaken(ps[0], ms_sum(*rest, replacement(target, k)));
    else out = weaken(inv(ps[0], target, k), *in.intro);
  } else if (in.rule == Rule::N) {
    out = apply(in, {inv(ps[0], target.body(), k)});
  } else if (in.rule == Rule::RDynImp) {
    out = apply(in, {inv(ps[0], nabla(target), k)});
  } else if (in.rule == rule_of(k) && *in.principal == target) {
    out = ps[k == Kind::And || k == Kind::Or1 ? 0 : 1];
  } else {
    if (is_axiom(in.rule)) throw InternalError("inversion reached the axiom '" + t->seq.str() + "'");
    std::vector<Proof> next;
    for (const auto& p : ps) next.push_back(ms_contains(p->seq.ant, target) ? inv(p, target, k) : p);
    out = apply(in, std::move(next));
  }
  require_height(t, out, "inversion");
  return out;
}

}  // namespace

Proof raw_invert_and(const Proof& t, const Formula& target) { return inv(t, target, Kind::And); }
Proof raw_invert_or(const Proof& t, const Formula& target, int which) {
  return inv(t, target, which == 1 ? Kind::Or1 : Kind::Or2);
}
Proof raw_invert_heyt(const Proof& t, const Formula& target) { return inv(t, target, Kind::Heyt); }

Proof raw_contract(const Proof& t, const Formula& a) {
  if (t->hypothesis) throw InputError("contraction does not apply to hypothesis leaves");
  const RuleInstance& in = t->inst;
  const auto& ps = t->premises;
  Proof out;
  if (in.rule == Rule::LW) {
    if (auto rest = ms_remove(*in.intro, a)) out = weaken(ps[0], *rest);
    else out = weaken(raw_contract(ps[0], a), *in.intro);
  } else if (in.rule == Rule::N) {
    out = apply(in, {raw_contract(ps[0], a.body())});
  } else if (in.rule == Rule::RDynImp) {
    out = apply(in, {raw_contract(ps[0], nabla(a))});
  } else {
    if (is_axiom(in.rule)) throw InternalError("contraction reached the axiom '" + t->seq.str() + "'");
    std::vector<Proof> next;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const Proof& p = ps[i];
      if (ms_count(p->seq.ant, a) >= 2) {
        next.push_back(raw_contract(p, a));
        continue;
      }
      // the principal copy was decomposed in this premise
      if (!in.principal || *in.principal != a) throw InternalError("contraction lost a copy of '" + a.str() + "'");
      Multiset goal = *ms_remove(p->seq.ant, a);
      Proof q;
      if (in.rule == Rule::LAndN) q = raw_invert_and(p, a);
      else if (in.rule == Rule::LOrN) q = raw_invert_or(p, a, static_cast<int>(i) + 1);
      else if (in.rule == Rule::LHeytImpN && i == 1) q = raw_invert_heyt(p, a);
      else throw InternalError("contraction: unexpected principal premise under " + std::string(rule_name(in.rule)));
      next.push_back(raw_contract_to(q, goal));
    }
    out = apply(in, std::move(next));
  }
  require_height(t, out, "contraction");
  return out;
}

Proof raw_contract_to(const Proof& t, const Multiset& target) {
  auto extra = ms_diff(t->seq.ant, target);
  if (!extra) throw InternalError("contract_to: '" + t->seq.str() + "' lacks part of the target antecedent");
  Proof out = t;
  for (const auto& f : *extra) {
    if (!ms_contains(target, f)) throw InternalError("contract_to: '" + f.str() + "' is not a duplicate");
    out = raw_contract(out, f);
  }
  if (out->seq.ant != target) throw InternalError("contract_to: contraction did not reach the target");
  return out;
}

}  // namespace detail

namespace {

void require_ikd(const Proof& t, const char* what) {
  if (auto f = check_proof(t, Calculus::of(Base::IKD)))
    throw InputError(std::string(what) + ": the proof does not check in IKD " + f->describe());
}

void require_target(const Proof& t, const Formula& target, Op op) {
  if (!ms_contains(t->seq.ant, target))
    throw InputError("'" + target.str() + "' does not occur in the antecedent of '" + t->seq.str() + "'");
  if (!strip_nabla(target).core.is(op)) throw InputError("'" + target.str() + "' has the wrong shape for this inversion");
}

Proof finish(const Proof& in, const Proof& out, const Sequent& want, const char* what) {
  if (!(out->seq == want)) throw InternalError(std::string(what) + " produced '" + out->seq.str() + "'");
  detail::require_height(in, out, what);
  require_checks(out, Calculus::of(Base::IKD), what);
  return out;
}

}  // namespace

Proof invert_and(const Proof& t, const Formula& target) {
  require_ikd(t, "invert");
  require_target(t, target, Op::And);
  auto [n, c] = strip_nabla(target);
  Sequent want(ms_sum(*ms_remove(t->seq.ant, target), ms({nabla(c.lhs(), n), nabla(c.rhs(), n)})), t->seq.suc);
  return finish(t, detail::raw_invert_and(t, target), want, "inversion");
}

std::pair<Proof, Proof> invert_or(const Proof& t, const Formula& target) {
  require_ikd(t, "invert");
  require_target(t, target, Op::Or);
  auto [n, c] = strip_nabla(target);
  auto rest = *ms_remove(t->seq.ant, target);
  return {finish(t, detail::raw_invert_or(t, target, 1), Sequent(ms_add(rest, nabla(c.lhs(), n)), t->seq.suc), "inversion"),
          finish(t, detail::raw_invert_or(t, target, 2), Sequent(ms_add(rest, nabla(c.rhs(), n)), t->seq.suc), "inversion")};
}

Proof invert_heyt(const Proof& t, const Formula& target) {
  require_ikd(t, "invert");
  require_target(t, target, Op::Heyt);
  auto [n, c] = strip_nabla(target);
  Sequent want(ms_add(*ms_remove(t->seq.ant, target), nabla(c.rhs(), n)), t->seq.suc);
  return finish(t, detail::raw_invert_heyt(t, target), want, "inversion");
}

Proof contract(const Proof& t, const Formula& dup) {
  require_ikd(t, "contract");
  if (ms_count(t->seq.ant, dup) < 2)
    throw InputError("'" + dup.str() + "' occurs fewer than two times in '" + t->seq.str() + "'");
  Sequent want(*ms_remove(t->seq.ant, dup), t->seq.suc);
  return finish(t, detail::raw_contract(t, dup), want, "contraction");
}

Proof contract_to(const Proof& t, const Multiset& target) {
  require_ikd(t, "contract");
  auto sorted = ms(target);
  auto extra = ms_diff(t->seq.ant, sorted);
  if (!extra) throw InputError("the target antecedent is not part of '" + t->seq.str() + "'");
  for (const auto& f : *extra)
    if (!ms_contains(sorted, f)) throw InputError("'" + f.str() + "' cannot be contracted away");
  return finish(t, detail::raw_contract_to(t, sorted), Sequent(sorted, t->seq.suc), "contraction");
}

}  // namespace ikd
