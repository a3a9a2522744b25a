#include <string>

#include "transform_internal.hpp"

namespace ikd {

Calculus translation_target(const Calculus& source) {
  switch (source.base) {
    case Base::STLNH: return Calculus::of(Base::IKD);
    case Base::STLN: return Calculus::of(Base::IKDS);
    case Base::IKD: return Calculus::of(Base::STLNH);
    case Base::IKDS: return Calculus::of(Base::STLN);
  }
  return Calculus::of(Base::IKD);
}

namespace {

Proof s2i(const Proof& t) {
  if (t->hypothesis) throw InputError("stl_to_ikd: hypothesis leaves are not translated");
  std::vector<Proof> ps;
  for (const auto& p : t->premises) ps.push_back(s2i(p));
  const RuleInstance& in = t->inst;
  const Formula p = in.principal.value_or(Formula());
  switch (in.rule) {
    case Rule::Id:
      return identity(p);
    case Rule::Lw:
      return weaken(ps[0], *in.intro);
    case Rule::Lc:
      return detail::raw_contract(ps[0], p);
    case Rule::Cut:
      return detail::raw_cut(ps[0], ps[1], in.cut_n(), CutStrategy::LeftFirst);
    case Rule::LAnd1:
      return ikd::apply(mk::land(0, p), {weaken(ps[0], {p.rhs()})});
    case Rule::LAnd2:
      return ikd::apply(mk::land(0, p), {weaken(ps[0], {p.lhs()})});
    case Rule::LOr:
      return ikd::apply(mk::lor(0, p), ps);
    case Rule::LDynImp:
      return ikd::apply(mk::ldyn(0, p), {weaken(ps[0], {p}), weaken(ps[1], {p})});
    case Rule::LHeytImp:
      return ikd::apply(mk::lheyt(0, p), {weaken(ps[0], {p}), ps[1]});
    default:
      return ikd::apply(in, ps);
  }
}

Proof i2s(const Proof& t) {
  if (t->hypothesis) throw InputError("ikd_to_stl: hypothesis leaves are not translated");
  std::vector<Proof> ps;
  for (const auto& p : t->premises) ps.push_back(i2s(p));
  const RuleInstance& in = t->inst;
  const Formula p = in.principal.value_or(Formula());
  const int n = in.exponent();
  const Formula core = p ? strip_nabla(p).core : Formula();
  auto via_dist = [&](Op op, const Formula& q, Proof d) {
    if (n == 0) return d;
    return ikd::apply(mk::cut(q), {nabla_dist_proof(op, n, core.lhs(), core.rhs()), d});
  };
  switch (in.rule) {
    case Rule::IdP:
      return ikd::apply(mk::id(p), {});
    case Rule::LW: {
      Proof d = ps[0];
      for (const auto& f : *in.intro) d = ikd::apply(mk::lw_stl(f), {d});
      return d;
    }
    case Rule::LAndN: {
      Formula q = conj(nabla(core.lhs(), n), nabla(core.rhs(), n));
      Proof d = ikd::apply(mk::land2(q), {ikd::apply(mk::land1(q), {ps[0]})});
      return via_dist(Op::And, q, ikd::apply(mk::lc(q), {d}));
    }
    case Rule::LOrN: {
      Formula q = disj(nabla(core.lhs(), n), nabla(core.rhs(), n));
      return via_dist(Op::Or, q, ikd::apply(mk::lor_stl(q), ps));
    }
    case Rule::LDynImpN: {
      Formula q = nabla(dimp(nabla(core.lhs(), n), nabla(core.rhs(), n)));
      Proof d = ikd::apply(mk::ldyn_stl(q), ps);
      if (n > 0) d = ikd::apply(mk::cut(q), {ikd::apply(mk::nab(), {nabla_dist_proof(Op::Dyn, n, core.lhs(), core.rhs())}), d});
      return ikd::apply(mk::lc(p), {d});
    }
    case Rule::LHeytImpN: {
      Formula q = himp(nabla(core.lhs(), n), nabla(core.rhs(), n));
      Proof d = ikd::apply(mk::lheyt_stl(q), {ps[0], ikd::apply(mk::lw_stl(p), {ps[1]})});
      return ikd::apply(mk::lc(p), {via_dist(Op::Heyt, q, d)});
    }
    case Rule::Cut: {
      int m = in.cut_n();
      return ikd::apply(mk::cut(nabla(*in.cut_formula, m)), {nabla_times(ps[0], m), ps[1]});
    }
    default:
      return ikd::apply(in, ps);
  }
}

Proof stl_id(const Formula& a) { return ikd::apply(mk::id(a), {}); }

// #(A | B) |- #A | #B
Proof dist_or_one(const Formula& a, const Formula& b) {
  Formula na = nabla(a), nb = nabla(b), goal = disj(na, nb), bx = box(goal);
  auto side = [&](int which, const Formula& x) {
    Proof d = ikd::apply(mk::lw_stl(top()), {ikd::apply(mk::ror(which, goal), {stl_id(x)})});
    return ikd::apply(mk::rdyn(bx), {d});
  };
  Proof lifted = ikd::apply(mk::nab(), {ikd::apply(mk::lor_stl(disj(a, b)), {side(1, na), side(2, nb)})});
  Proof unbox = ikd::apply(mk::ldyn_stl(nabla(bx)), {ikd::apply(mk::rtop(), {}), stl_id(goal)});
  return ikd::apply(mk::cut(nabla(bx)), {lifted, unbox});
}

}  // namespace

Proof nabla_dist_proof(Op op, int n, const Formula& a, const Formula& b) {
  if (n < 0) throw InputError("nabla_dist_proof: negative exponent");
  Proof out;
  switch (op) {
    case Op::And: {
      Formula ab = conj(a, b);
      Proof l = nabla_times(ikd::apply(mk::land1(ab), {stl_id(a)}), n);
      Proof r = nabla_times(ikd::apply(mk::land2(ab), {stl_id(b)}), n);
      out = ikd::apply(mk::rand(conj(nabla(a, n), nabla(b, n))), {l, r});
      break;
    }
    case Op::Dyn: {
      Proof mp = ikd::apply(mk::ldyn_stl(nabla(dimp(a, b))), {stl_id(a), ikd::apply(mk::lw_stl(a), {stl_id(b)})});
      out = ikd::apply(mk::rdyn(dimp(nabla(a, n), nabla(b, n))), {nabla_times(mp, n)});
      break;
    }
    case Op::Heyt: {
      Proof mp = ikd::apply(mk::lheyt_stl(himp(a, b)), {stl_id(a), ikd::apply(mk::lw_stl(a), {stl_id(b)})});
      out = ikd::apply(mk::rheyt(himp(nabla(a, n), nabla(b, n))), {nabla_times(mp, n)});
      break;
    }
    case Op::Or: {
      out = stl_id(disj(a, b));
      for (int k = 0; k < n; ++k) {
        Formula ak = nabla(a, k), bk = nabla(b, k);
        Proof step = dist_or_one(ak, bk);
        out = k == 0 ? step : ikd::apply(mk::cut(nabla(disj(ak, bk))), {ikd::apply(mk::nab(), {out}), step});
      }
      break;
    }
    default:
      throw InputError("nabla_dist_proof: the connective must be &, |, -> or =>");
  }
  Calculus c = Calculus::of(op != Op::Heyt && is_star(out->seq) ? Base::STLN : Base::STLNH);
  require_checks(out, c, "nabla_dist_proof");
  return out;
}

Proof stl_to_ikd(const Proof& t, const Calculus& source) {
  if (!source.stl()) throw InputError("stl_to_ikd: the source calculus must be STLNH or STLN");
  if (auto f = check_proof(t, source))
    throw InputError(std::string("stl_to_ikd: the proof does not check in ") + base_name(source.base) + " " + f->describe());
  Proof out = s2i(t);
  if (!(out->seq == t->seq)) throw InternalError("stl_to_ikd changed the endsequent");
  require_checks(out, translation_target(source), "stl_to_ikd");
  return out;
}

Proof ikd_to_stl(const Proof& t, const Calculus& source) {
  if (source.stl()) throw InputError("ikd_to_stl: the source calculus must be IKD or IKDS");
  if (auto f = check_proof(t, source))
    throw InputError(std::string("ikd_to_stl: the proof does not check in ") + base_name(source.base) + " " + f->describe());
  Proof out = i2s(t);
  if (!(out->seq == t->seq)) throw InternalError("ikd_to_stl changed the endsequent");
  require_checks(out, translation_target(source), "ikd_to_stl");
  return out;
}

}  // namespace ikd
