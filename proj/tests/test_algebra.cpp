#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ikd/algebra.hpp"

using namespace ikd;

namespace {
std::vector<FiniteNablaAlgebra> of_size(int k, bool heyting) {
  std::vector<FiniteNablaAlgebra> out;
  for (auto& a : enumerate_algebras(k, heyting))
    if (a.size == k) out.push_back(a);
  return out;
}
}  // namespace

TEST_CASE("lattice counts match the known sequence") {
  // unlabeled lattices with 2..6 elements: 1, 1, 2, 5, 15; distributive: 1, 1, 2, 3, 5
  std::vector<int> all{1, 1, 2, 5, 15}, dist{1, 1, 2, 3, 5};
  for (int k = 2; k <= 6; ++k) {
    auto ls = lattices_of_size(k);
    CHECK(static_cast<int>(ls.size()) == all[k - 2]);
    int d = 0;
    for (auto& l : ls) d += l.distributive();
    CHECK(d == dist[k - 2]);
  }
}

TEST_CASE("size 2 and the 3-chain") {
  auto two = of_size(2, true);
  REQUIRE(two.size() == 1);
  CHECK(two[0].nabla == std::vector<int>{0, 1});
  CHECK(two[0].dyn_imp == *two[0].heyt_imp);
  auto three = of_size(3, true);
  std::vector<std::vector<int>> nablas;
  for (auto& a : three) nablas.push_back(a.nabla);
  CHECK(nablas == std::vector<std::vector<int>>{{0, 0, 2}, {0, 1, 2}, {0, 2, 2}});
  // independent count: every map on the chain fixing the ends and preserving min and max
  int count = 0;
  for (int x = 0; x < 3; ++x) {
    int f[3] = {0, x, 2};
    bool ok = true;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (f[std::min(a, b)] != std::min(f[a], f[b]) || f[std::max(a, b)] != std::max(f[a], f[b])) ok = false;
    count += ok;
  }
  CHECK(count == 3);
}

TEST_CASE("every enumerated algebra satisfies the invariants") {
  for (bool h : {false, true}) {
    for (auto& a : enumerate_algebras(6, h)) {
      auto v = verify_algebra(a);
      CHECK_MESSAGE(!v, *v);
      if (h) CHECK(a.heyt_imp);
      int k = a.size;
      for (int x = 0; x < k; ++x) {
        CHECK(a.dyn_imp[x][x] == a.top);
        for (int y = 0; y < k; ++y)
          for (int z = 0; z < k; ++z) {
            if (a.le(x, y)) {
              CHECK(a.le(a.dyn_imp[y][z], a.dyn_imp[x][z]));
              CHECK(a.le(a.dyn_imp[z][x], a.dyn_imp[z][y]));
            }
            CHECK(a.le(a.meet[a.dyn_imp[x][y]][a.dyn_imp[y][z]], a.dyn_imp[x][z]));
          }
      }
    }
  }
}

TEST_CASE("evaluate examples") {
  auto two = of_size(2, true)[0];
  CHECK(evaluate(parse_formula("p -> q"), two, {{"p", 1}, {"q", 0}}) == 0);
  auto three = of_size(3, true);
  CHECK(evaluate(parse_formula("#p"), three[0], {{"p", 1}}) == 0);
  for (auto& a : enumerate_algebras(4, true))
    for (int x = 0; x < a.size; ++x) {
      int acc = a.bot;
      for (int c = 0; c < a.size; ++c)
        if (a.le(a.nabla[c], x)) acc = a.join[acc][c];
      CHECK(evaluate(parse_formula("T -> p"), a, {{"p", x}}) == acc);
    }
  int nondist = 0;
  for (auto& a : of_size(5, false))
    if (!a.distributive()) {
      ++nondist;
      CHECK(!a.heyt_imp);
      CHECK_THROWS_AS(evaluate(parse_formula("p => p"), a, {{"p", 0}}), InputError);
    }
  CHECK(nondist > 0);
}

TEST_CASE("refute examples") {
  auto c = refute(parse_sequent("p |- #p"), 4, false);
  REQUIRE(c);
  CHECK(c->algebra.size == 3);
  CHECK(c->algebra.nabla == std::vector<int>{0, 0, 2});
  CHECK(c->valuation.at("p") == 1);
  auto d = refute(parse_sequent("#p |- p"), 4, false);
  REQUIRE(d);
  CHECK(d->algebra.size == 3);
  CHECK(d->algebra.nabla == std::vector<int>{0, 2, 2});
  CHECK(d->valuation.at("p") == 1);
  CHECK(!refute(parse_sequent("p |- p"), 4, false));
  CHECK(refute(parse_sequent("|- p | (p -> F)"), 4, false));
  CHECK(!refute(parse_sequent("#(p | q) |- #p | #q"), 4, false));
  CHECK(!refute(parse_sequent("p & (q | r) |- p & q | p & r"), 4, false));
  CHECK_THROWS_AS(refute(parse_sequent("p => q |-"), 3, false), InputError);
  auto j = countermodel_to_json(*c);
  CHECK(j["sequent"] == "p |- #p");
  CHECK(j["algebra"]["nabla"] == nlohmann::json({0, 0, 2}));
}
