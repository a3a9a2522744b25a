#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ikd/kernel.hpp"
#include "ikd/search.hpp"

namespace ikd {

// ---------------------------------------------------------------- disjunction property

struct DisjunctSplit {
  bool left = true;
  Proof proof;  // |- A when left, |- B otherwise
};

// t proves |- A | B in IKD or IKDS.
DisjunctSplit split_disjunction(const Proof& t);

// ---------------------------------------------------------------- Visser rules

struct HeytingPart {
  int m = 0;
  Formula a, b;  // #^m(a => b)
  Formula formula() const;
};

struct DynPart {
  int n = 0;
  Formula c, d;  // #^n(c -> d)
  Formula formula() const;
};

struct VisserAntecedent {
  std::vector<HeytingPart> heyting_parts;
  std::vector<DynPart> dyn_parts;

  Multiset multiset() const;
  // Left-associated conjunction of the parts, T when there are none.
  Formula to_formula() const;
};

enum class VisserMode { Disjunctive, Implicative, Heyting };
const char* visser_mode_name(VisserMode m);

struct VisserVerdict {
  enum class Kind { HeytingPremise, DynPremise, LeftDisjunct, RightDisjunct, Residual };
  Kind kind = Kind::LeftDisjunct;
  int index = -1;                // part index for the two premise kinds
  std::vector<int> heyting_kept;  // I' for Residual
  std::vector<int> dyn_kept;      // J' for Residual
  Proof proof;
};
const char* verdict_kind_name(VisserVerdict::Kind k);

// The endsequent a verdict promises for the goal Gamma_X => goal.
Sequent verdict_sequent(const VisserAntecedent& x, VisserMode mode, int k, const Formula& goal, const VisserVerdict& v);

// t proves Gamma_X => E | F.
VisserVerdict visser_disjunctive(const Proof& t, const VisserAntecedent& x);
// t proves Gamma_X => #^k(E -> F).
VisserVerdict visser_implicative(const Proof& t, const VisserAntecedent& x, int k);
// t proves Gamma_X => #^k(E => F).
VisserVerdict visser_heyting(const Proof& t, const VisserAntecedent& x, int k);
// Disjunctive or implicative extraction for =>-free input; the verdict proof checks in IKDS.
VisserVerdict visser_star(const Proof& t, const VisserAntecedent& x, VisserMode mode, int k = 0);

// ---------------------------------------------------------------- interpolation

struct InterpolationResult {
  Formula interpolant;
  Proof left_proof;   // Gamma1 => C
  Proof right_proof;  // Gamma2, C => Delta
  std::vector<std::string> trace;
};

// left[i] marks the i-th antecedent occurrence of t (in multiset order) as part of Gamma1.
InterpolationResult interpolate(const Proof& t, const std::vector<bool>& left);

// Searches A => B in IKD and interpolates with Gamma1 = {A}; nullopt when the search fails.
std::optional<InterpolationResult> interpolate_formula(const Formula& a, const Formula& b, const SearchBudget& budget);

struct DeductiveInterpolant {
  Formula interpolant;
  Multiset sigma;       // variants of A
  Proof from_a;         // |- C from hypotheses |- A
  Proof to_b;           // |- B from hypotheses |- C
  InterpolationResult craig;
};

// t proves |- B in IKD with cut from hypotheses |- A.
DeductiveInterpolant deductive_interpolant(const Formula& a, const Formula& b, const Proof& t);

}  // namespace ikd
