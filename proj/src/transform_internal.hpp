#pragma once

#include "ikd/transform.hpp"

// Unchecked workers shared by the transformation sources; public entry points add the checks.
namespace ikd::detail {

Proof raw_invert_and(const Proof& t, const Formula& target);
Proof raw_invert_or(const Proof& t, const Formula& target, int which);
Proof raw_invert_heyt(const Proof& t, const Formula& target);
Proof raw_contract(const Proof& t, const Formula& dup);
Proof raw_contract_to(const Proof& t, const Multiset& target);
Proof raw_cut(const Proof& d1, const Proof& d2, int n, CutStrategy s);
Proof raw_eliminate_cuts(const Proof& t, CutStrategy s);

void require_height(const Proof& in, const Proof& out, const char* what);

}  // namespace ikd::detail
