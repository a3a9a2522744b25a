#pragma once

#include <string>

#include "ikd/kernel.hpp"

namespace ikd {

// Display label of the rule at a node, e.g. "Id^p", "L->^0", "Cut^1".
std::string rule_label(const ProofNode& node);

// One sequent per line, conclusion first, premises indented two spaces per level.
std::string render_ascii(const Proof& t);

std::string formula_latex(const Formula& f);
std::string sequent_latex(const Sequent& s);
// A complete bussproofs document.
std::string render_latex(const Proof& t);

}  // namespace ikd
