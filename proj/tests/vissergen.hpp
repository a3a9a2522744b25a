#pragma once

#include <random>

#include "gen.hpp"
#include "ikd/meta.hpp"
#include "ikd/search.hpp"

namespace ikd::testing {

struct VisserInstance {
  VisserAntecedent x;
  VisserMode mode = VisserMode::Disjunctive;
  int k = 0;
  Formula goal;
  Proof proof;
};

// Random provable instances of the Visser premise shapes, with search-found proofs.
struct VisserGen {
  FormulaGen fgen;
  SearchBudget budget{20, 2, 20000};

  std::optional<VisserInstance> operator()(std::mt19937& rng, VisserMode mode) const {
    VisserInstance v;
    v.mode = mode;
    v.k = mode == VisserMode::Disjunctive ? 0 : roll(rng, 2);
    int nh = roll(rng, 3), nd = roll(rng, 3);
    for (int i = 0; i < nh; ++i) v.x.heyting_parts.push_back({roll(rng, 3), maybe_top(rng), small(rng)});
    for (int j = 0; j < nd; ++j) v.x.dyn_parts.push_back({roll(rng, 3), maybe_top(rng), small(rng)});
    Formula e = side(rng, v), f = side(rng, v);
    switch (mode) {
      case VisserMode::Disjunctive: v.goal = disj(e, f); break;
      case VisserMode::Implicative: v.goal = nabla(dimp(e, roll(rng, 3) == 0 ? e : f), v.k); break;
      case VisserMode::Heyting: v.goal = nabla(himp(e, roll(rng, 3) == 0 ? e : f), v.k); break;
    }
    auto found = prove(Sequent(v.x.multiset(), v.goal), Calculus::of(Base::IKD), budget);
    if (!found.proof) return std::nullopt;
    v.proof = *found.proof;
    return v;
  }

 private:
  static int roll(std::mt19937& rng, int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng); }
  Formula small(std::mt19937& rng) const { return fgen(rng, 1); }
  Formula maybe_top(std::mt19937& rng) const { return roll(rng, 2) ? top() : small(rng); }

  // A disjunct or implication side, often one the antecedent parts can reach.
  Formula side(std::mt19937& rng, const VisserInstance& v) const {
    switch (roll(rng, 4)) {
      case 0:
        if (!v.x.heyting_parts.empty()) {
          const auto& h = v.x.heyting_parts[roll(rng, static_cast<int>(v.x.heyting_parts.size()))];
          return nabla(h.b, h.m);
        }
        break;
      case 1:
        if (!v.x.dyn_parts.empty()) {
          const auto& d = v.x.dyn_parts[roll(rng, static_cast<int>(v.x.dyn_parts.size()))];
          return nabla(d.d, std::max(0, d.n - 1));
        }
        break;
      default:
        break;
    }
    return small(rng);
  }
};

}  // namespace ikd::testing
