#pragma once

#include <optional>
#include <string>

#include "ikd/kernel.hpp"

namespace ikd {

struct SearchBudget {
  int max_depth = 30;
  int max_nabla_excess = 3;
  long max_nodes = 200000;
};

struct SearchOptions {
  bool loop_check = true;
};

struct SearchReport {
  long expansions = 0;
  long loop_prunes = 0;
  long excess_prunes = 0;
  long depth_cutoffs = 0;
  int depth_reached = 0;
  // "nodes", "depth", "nabla_excess", or "none" when no bound was hit
  std::string budget_hit = "none";
};

struct SearchOutcome {
  std::optional<Proof> proof;
  SearchReport report;
  bool found() const { return proof.has_value(); }
};

// Budget given as "depth,excess,nodes"; missing fields keep their defaults.
SearchBudget parse_budget(const std::string& text);
// Reads IKDPROVE_BUDGET when set.
SearchBudget default_budget();

SearchOutcome prove(const Sequent& goal, const Calculus& calc, const SearchBudget& budget, const SearchOptions& opt = {});
SearchOutcome prove_formula(const Formula& f, const Calculus& calc, const SearchBudget& budget, const SearchOptions& opt = {});

}  // namespace ikd
