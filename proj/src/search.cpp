#include "ikd/search.hpp"

#include <climits>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace ikd {

SearchBudget parse_budget(const std::string& text) {
  SearchBudget b;
  std::stringstream ss(text);
  std::string part;
  long vals[3] = {b.max_depth, b.max_nabla_excess, b.max_nodes};
  for (int i = 0; i < 3 && std::getline(ss, part, ','); ++i) {
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      vals[i] = std::stol(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError("bad budget '" + text + "': expected depth,excess,nodes");
    }
  }
  if (std::getline(ss, part, ',')) throw InputError("bad budget '" + text + "': too many fields");
  b.max_depth = static_cast<int>(vals[0]);
  b.max_nabla_excess = static_cast<int>(vals[1]);
  b.max_nodes = vals[2];
  if (b.max_depth < 1 || b.max_nabla_excess < 1 || b.max_nodes < 1) throw InputError("budget bounds must be >= 1");
  return b;
}

SearchBudget default_budget() {
  if (const char* e = std::getenv("IKDPROVE_BUDGET")) return parse_budget(e);
  return {};
}

namespace {

struct NodeCap {};

struct Res {
  std::optional<Proof> proof;
  int loop_dep = INT_MAX;
  bool depth_cut = false;
  bool excess_cut = false;

  void absorb(const Res& o) {
    loop_dep = std::min(loop_dep, o.loop_dep);
    depth_cut |= o.depth_cut;
    excess_cut |= o.excess_cut;
  }
};

Sequent collapse(const Sequent& s) { return Sequent(ms_set(s.ant), s.suc); }

class Searcher {
 public:
  Searcher(const Calculus& c, const SearchBudget& b, const SearchOptions& o, int goal_nabla)
      : calc_(c), budget_(b), opt_(o), nabla_limit_(goal_nabla + b.max_nabla_excess) {}

  SearchReport rep;

  // Proves a set-form sequent with a proof of height at most d.
  Res search(const Sequent& g, int d) {
    const std::string key = g.str();
    if (auto it = proven_.find(key); it != proven_.end() && it->second->height <= d) return {it->second};
    if (auto it = failed_.find(key); it != failed_.end() && it->second.first >= d) {
      Res r;
      r.depth_cut = it->second.first != INT_MAX;
      r.excess_cut = it->second.second;
      return r;
    }
    if (auto c = close(g, d)) return remember(key, {c});
    Res r;
    if (d <= 0) {
      ++rep.depth_cutoffs;
      r.depth_cut = true;
      return r;
    }
    if (max_nabla_depth(g) > nabla_limit_) {
      ++rep.excess_prunes;
      r.excess_cut = true;
      return r;
    }
    int me = static_cast<int>(path_.size());
    if (opt_.loop_check) {
      if (auto it = path_.find(key); it != path_.end()) {
        ++rep.loop_prunes;
        r.loop_dep = it->second;
        return r;
      }
    }
    if (++rep.expansions > budget_.max_nodes) throw NodeCap{};
    bool inserted = path_.emplace(key, me).second;
    r = expand(g, d);
    if (inserted) path_.erase(key);
    if (r.loop_dep >= me) r.loop_dep = INT_MAX;
    if (r.proof) return remember(key, r);
    if (r.loop_dep == INT_MAX) {
      auto& slot = failed_[key];
      int depth = r.depth_cut ? d : INT_MAX;
      if (depth >= slot.first) slot = {depth, r.excess_cut};
    }
    return r;
  }

 private:
  Res remember(const std::string& key, Res r) {
    auto it = proven_.find(key);
    if (it == proven_.end() || it->second->height > (*r.proof)->height) proven_[key] = *r.proof;
    return r;
  }

  // Axioms up to weakening, with the derived identity and #-prefixed axioms.
  std::optional<Proof> close(const Sequent& g, int d) {
    for (const auto& f : g.ant) {
      auto [n, core] = strip_nabla(f);
      if (!core.is(Op::Bot)) continue;
      Proof p = nabla_times(apply(mk::lbot(), {}), n);
      if (g.suc) p = apply(mk::rw(*g.suc), {p});
      p = weaken_to(p, g.ant);
      if (p->height <= d) return p;
    }
    if (g.suc) {
      auto [n, core] = strip_nabla(*g.suc);
      if (core.is(Op::Top)) {
        Proof p = weaken_to(nabla_times(apply(mk::rtop(), {}), n), g.ant);
        if (p->height <= d) return p;
      }
      if (ms_contains(g.ant, *g.suc)) {
        Proof p = weaken_to(identity(*g.suc), g.ant);
        if (p->height <= d) return p;
      }
    }
    return std::nullopt;
  }

  // Searches a premise that may contain repeated formulas; repeats are restored by LW.
  Res sub(const Sequent& prem, int d) {
    Sequent c = collapse(prem);
    if (c == prem) return search(prem, d);
    Res r = search(c, d - 1);
    if (r.proof) r.proof = weaken_to(*r.proof, prem.ant);
    return r;
  }

  Res unary(const RuleInstance& inst, const Sequent& prem, int d) {
    Res r = sub(prem, d - 1);
    if (r.proof) r.proof = apply(inst, {*r.proof});
    return r;
  }

  Res binary(const RuleInstance& inst, const Sequent& p0, const Sequent& p1, int d) {
    Res a = sub(p0, d - 1);
    if (!a.proof) return a;
    Res b = sub(p1, d - 1);
    b.absorb(a);
    if (!b.proof) return b;
    b.proof = apply(inst, {*a.proof, *b.proof});
    return b;
  }

  Res expand(const Sequent& g, int d) {
    const bool heyt = !calc_.star();

    // invertible left rules
    for (const auto& f : g.ant) {
      auto [n, c] = strip_nabla(f);
      if (c.is(Op::And)) {
        auto rest = *ms_remove(g.ant, f);
        return unary(mk::land(n, f), Sequent(ms_sum(rest, ms({nabla(c.lhs(), n), nabla(c.rhs(), n)})), g.suc), d);
      }
      if (c.is(Op::Or)) {
        auto rest = *ms_remove(g.ant, f);
        return binary(mk::lor(n, f), Sequent(ms_add(rest, nabla(c.lhs(), n)), g.suc),
                      Sequent(ms_add(rest, nabla(c.rhs(), n)), g.suc), d);
      }
    }
    // invertible right rules
    if (g.suc) {
      const Formula& s = *g.suc;
      if (s.is(Op::And)) return binary(mk::rand(s), Sequent(g.ant, s.lhs()), Sequent(g.ant, s.rhs()), d);
      if (s.is(Op::Heyt) && heyt) return unary(mk::rheyt(s), Sequent(ms_add(g.ant, s.lhs()), s.rhs()), d);
      if (s.is(Op::Dyn)) return unary(mk::rdyn(s), Sequent(ms_add(ms_nabla(g.ant), s.lhs()), s.rhs()), d);
    }

    Res acc;
    auto attempt = [&](Res r) {
      acc.absorb(r);
      if (r.proof) acc.proof = r.proof;
      return acc.proof.has_value();
    };

    if (g.suc && g.suc->is(Op::Or)) {
      const Formula& s = *g.suc;
      if (attempt(unary(mk::ror(1, s), Sequent(g.ant, s.lhs()), d))) return acc;
      if (attempt(unary(mk::ror(2, s), Sequent(g.ant, s.rhs()), d))) return acc;
    }
    for (const auto& f : g.ant) {
      auto [n, c] = strip_nabla(f);
      if (!c.is(Op::Dyn) || n < 1) continue;
      Formula a = nabla(c.lhs(), n - 1), b = nabla(c.rhs(), n - 1);
      if (ms_contains(g.ant, b) || g.suc == a) continue;
      if (attempt(binary(mk::ldyn(n - 1, f), Sequent(g.ant, a), Sequent(ms_add(g.ant, b), g.suc), d))) return acc;
    }
    if (heyt) {
      for (const auto& f : g.ant) {
        auto [n, c] = strip_nabla(f);
        if (!c.is(Op::Heyt)) continue;
        Formula a = nabla(c.lhs(), n), b = nabla(c.rhs(), n);
        if (g.suc == a) continue;
        auto rest = *ms_remove(g.ant, f);
        if (attempt(binary(mk::lheyt(n, f), Sequent(g.ant, a), Sequent(ms_add(rest, b), g.suc), d))) return acc;
      }
    }
    if (!g.suc || g.suc->is(Op::Nabla)) {
      Multiset kept, inner;
      for (const auto& f : g.ant)
        if (f.is(Op::Nabla)) {
          kept.push_back(f);
          inner.push_back(f.body());
        }
      if (!kept.empty() || g.suc) {
        std::optional<Formula> s;
        if (g.suc) s = g.suc->body();
        int extra = kept.size() == g.ant.size() ? 0 : 1;
        Res r = sub(Sequent(inner, s), d - 1 - extra);
        if (r.proof) r.proof = weaken_to(apply(mk::nab(), {*r.proof}), g.ant);
        if (attempt(r)) return acc;
      }
    }
    if (g.suc) {
      if (attempt(unary(mk::rw(*g.suc), Sequent(g.ant), d))) return acc;
    }
    return acc;
  }

  const Calculus& calc_;
  SearchBudget budget_;
  SearchOptions opt_;
  int nabla_limit_;
  std::unordered_map<std::string, Proof> proven_;
  std::unordered_map<std::string, std::pair<int, bool>> failed_;
  std::unordered_map<std::string, int> path_;
};

}  // namespace

SearchOutcome prove(const Sequent& goal, const Calculus& calc, const SearchBudget& budget, const SearchOptions& opt) {
  if (calc.stl()) throw InputError("proof search runs in IKD or IKDS");
  if (calc.allow_cut) throw InputError("proof search never uses cut");
  if (calc.star() && !is_star(goal)) throw InputError("=> is not in the language of IKDS");
  if (budget.max_depth < 1 || budget.max_nabla_excess < 1 || budget.max_nodes < 1)
    throw InputError("budget bounds must be >= 1");
  Searcher s(calc, budget, opt, max_nabla_depth(goal));
  SearchOutcome out;
  Sequent g = collapse(goal);
  bool extra = !(g == goal);
  try {
    for (int d = 0; d <= budget.max_depth; ++d) {
      s.rep.depth_reached = d;
      Res r = s.search(g, d - (extra ? 1 : 0));
      if (r.proof) {
        out.proof = extra ? weaken_to(*r.proof, goal.ant) : *r.proof;
        break;
      }
      if (!r.depth_cut) {
        s.rep.budget_hit = r.excess_cut ? "nabla_excess" : "none";
        break;
      }
      s.rep.budget_hit = "depth";
    }
  } catch (const NodeCap&) {
    s.rep.budget_hit = "nodes";
    --s.rep.expansions;
  }
  if (out.proof) {
    s.rep.budget_hit = "none";
    if ((*out.proof)->height > budget.max_depth) throw InternalError("search returned a proof above the depth bound");
    if (!((*out.proof)->seq == goal)) throw InternalError("search returned a proof of another sequent");
    require_checks(*out.proof, calc, "proof search");
  }
  out.report = s.rep;
  return out;
}

SearchOutcome prove_formula(const Formula& f, const Calculus& calc, const SearchBudget& budget, const SearchOptions& opt) {
  return prove(Sequent({}, f), calc, budget, opt);
}

}  // namespace ikd
