#pragma once

#include <utility>

#include "ikd/kernel.hpp"

namespace ikd {

// Inversion: target is an antecedent occurrence of #^n(A & B), #^n(A | B) or #^n(A => B).
// Results never exceed the height of t.
Proof invert_and(const Proof& t, const Formula& target);
std::pair<Proof, Proof> invert_or(const Proof& t, const Formula& target);
Proof invert_heyt(const Proof& t, const Formula& target);

// Removes one copy of dup from an antecedent holding at least two; height never grows.
Proof contract(const Proof& t, const Formula& dup);
// Contracts t until its antecedent is exactly target.
Proof contract_to(const Proof& t, const Multiset& target);

enum class CutStrategy { LeftFirst, RightFirst };

// d1 proves Pi => A, d2 proves Phi, #^n A => Lambda; the result proves Phi, #^n Pi => Lambda without cut.
Proof cut_once(const Proof& d1, const Proof& d2, int n, CutStrategy s = CutStrategy::LeftFirst);
// Removes cuts topmost first.
Proof eliminate_cuts(const Proof& t, CutStrategy s = CutStrategy::LeftFirst);

// source is STLNH or STLN; the result is cut-free in IKD or IKDS respectively.
Proof stl_to_ikd(const Proof& t, const Calculus& source);
// source is IKD or IKDS; the result checks in STLNH or STLN respectively.
Proof ikd_to_stl(const Proof& t, const Calculus& source);
Calculus translation_target(const Calculus& source);

// #^n(A o B) |- #^n A o #^n B in STLNH (STLN when possible).
Proof nabla_dist_proof(Op connective, int n, const Formula& a, const Formula& b);

struct DeductionResult {
  Multiset sigma;
  Proof proof;
};

// t may use cut and hypothesis leaves |- A; the result is cut-free and hypothesis-free.
DeductionResult deduction_export(const Proof& t, const Formula& a);
// t proves Gamma, sigma => Delta; the result proves Gamma => Delta from hypotheses |- A.
Proof deduction_import(const Formula& a, const Multiset& sigma, const Proof& t);
// Proof of |- b from the hypothesis |- a, for a variant b of a.
Proof derive_variant(const Formula& a, const Formula& b);
bool is_variant(const Formula& a, const Formula& b);

}  // namespace ikd
