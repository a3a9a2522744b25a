#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ikd/syntax.hpp"

namespace ikd {

using Table = std::vector<std::vector<int>>;

struct FiniteNablaAlgebra {
  int size = 0;
  std::vector<std::vector<bool>> leq;
  Table meet, join;
  int bot = 0, top = 0;
  std::vector<int> nabla;
  Table dyn_imp;
  std::optional<Table> heyt_imp;

  bool le(int a, int b) const { return leq[a][b]; }
  bool distributive() const;
};

using Valuation = std::map<std::string, int>;

struct Countermodel {
  FiniteNablaAlgebra algebra;
  Valuation valuation;
  Sequent refuted;
};

constexpr int kMaxAlgebraSize = 6;

// Bounded lattices of the given size (bottom is 0, top is size-1), up to isomorphism.
std::vector<FiniteNablaAlgebra> lattices_of_size(int size);
// Algebras of sizes 2..max_size in increasing size; each size is deduplicated up to isomorphism.
// With need_heyting only distributive carriers are emitted and heyt_imp is filled in.
std::vector<FiniteNablaAlgebra> enumerate_algebras(int max_size, bool need_heyting);

// Independent re-verification of every type invariant; returns the first failure.
std::optional<std::string> verify_algebra(const FiniteNablaAlgebra& a);

int evaluate(const Formula& f, const FiniteNablaAlgebra& a, const Valuation& v);
bool holds(const Sequent& s, const FiniteNablaAlgebra& a, const Valuation& v);
std::optional<Countermodel> refute(const Sequent& s, int max_size, bool need_heyting);

nlohmann::json algebra_to_json(const FiniteNablaAlgebra& a);
nlohmann::json countermodel_to_json(const Countermodel& c);

}  // namespace ikd
