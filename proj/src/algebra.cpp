#include "ikd/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace ikd {

bool FiniteNablaAlgebra::distributive() const {
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      for (int c = 0; c < size; ++c)
        if (meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]) return false;
  return true;
}

namespace {

using Leq = std::vector<std::vector<bool>>;

// least upper bound (or greatest lower bound when up is false), -1 if none
int bound(const Leq& leq, int a, int b, bool up) {
  int k = static_cast<int>(leq.size());
  int best = -1;
  for (int c = 0; c < k; ++c) {
    bool ok = up ? (leq[a][c] && leq[b][c]) : (leq[c][a] && leq[c][b]);
    if (!ok) continue;
    if (best < 0 || (up ? leq[c][best] : leq[best][c])) best = c;
  }
  if (best < 0) return -1;
  for (int c = 0; c < k; ++c) {
    bool ok = up ? (leq[a][c] && leq[b][c]) : (leq[c][a] && leq[c][b]);
    if (ok && !(up ? leq[best][c] : leq[c][best])) return -1;
  }
  return best;
}

Leq leq_from_mask(int k, unsigned mask) {
  int m = k - 2;
  Leq leq(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i) {
    leq[0][i] = true;
    leq[i][k - 1] = true;
    leq[i][i] = true;
  }
  int bit = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (mask >> bit & 1u) leq[i + 1][j + 1] = true;
      ++bit;
    }
  return leq;
}

unsigned mask_under(int k, unsigned mask, const std::vector<int>& perm) {
  // perm maps inner index i to perm[i]
  int m = k - 2;
  auto bit_of = [m](int i, int j) { return i * (m - 1) + (j < i ? j : j - 1); };
  unsigned out = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (mask >> bit_of(i, j) & 1u) out |= 1u << bit_of(perm[i], perm[j]);
    }
  return out;
}

bool is_partial_order(const Leq& leq) {
  int k = static_cast<int>(leq.size());
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) return false;
      if (!leq[a][b]) continue;
      for (int c = 0; c < k; ++c)
        if (leq[b][c] && !leq[a][c]) return false;
    }
  return true;
}

std::vector<std::vector<int>> automorphisms(const FiniteNablaAlgebra& l) {
  int k = l.size, m = k - 2;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> full(k);
    full[0] = 0;
    full[k - 1] = k - 1;
    for (int i = 0; i < m; ++i) full[i + 1] = perm[i] + 1;
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b)
        if (l.leq[a][b] != l.leq[full[a]][full[b]]) ok = false;
    if (ok) out.push_back(full);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::optional<Table> residual(const FiniteNablaAlgebra& a, const std::vector<int>& left) {
  // r(x, y) = join of { c : left(c) & x <= y }, checked against the adjunction
  int k = a.size;
  Table r(k, std::vector<int>(k, a.bot));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      int acc = a.bot;
      for (int c = 0; c < k; ++c)
        if (a.le(a.meet[left[c]][x], y)) acc = a.join[acc][c];
      for (int c = 0; c < k; ++c)
        if (a.le(a.meet[left[c]][x], y) != a.le(c, acc)) return std::nullopt;
      r[x][y] = acc;
    }
  return r;
}

std::vector<FiniteNablaAlgebra> algebras_of_size(int k, bool need_heyting) {
  std::vector<FiniteNablaAlgebra> out;
  std::vector<int> ident(k);
  std::iota(ident.begin(), ident.end(), 0);
  for (const auto& lat : lattices_of_size(k)) {
    bool dist = lat.distributive();
    if (need_heyting && !dist) continue;
    std::optional<Table> heyt;
    if (dist) heyt = residual(lat, ident);
    auto autos = automorphisms(lat);
    std::vector<std::vector<int>> seen;
    int m = k - 2;
    std::vector<int> inner(m, 0);
    while (true) {
      std::vector<int> nab(k);
      nab[0] = lat.bot;
      nab[k - 1] = lat.top;
      for (int i = 0; i < m; ++i) nab[i + 1] = inner[i];
      bool ok = true;
      for (int a = 0; a < k && ok; ++a)
        for (int b = 0; b < k && ok; ++b)
          if (nab[lat.meet[a][b]] != lat.meet[nab[a]][nab[b]] || nab[lat.join[a][b]] != lat.join[nab[a]][nab[b]]) ok = false;
      if (ok) {
        std::vector<int> canon = nab;
        for (const auto& s : autos) {
          // s . nab . s^-1
          std::vector<int> img(k);
          for (int x = 0; x < k; ++x) img[s[x]] = s[nab[x]];
          canon = std::min(canon, img);
        }
        if (std::find(seen.begin(), seen.end(), canon) == seen.end()) {
          seen.push_back(canon);
          if (auto dyn = residual(lat, nab)) {
            FiniteNablaAlgebra alg = lat;
            alg.nabla = nab;
            alg.dyn_imp = *dyn;
            alg.heyt_imp = heyt;
            out.push_back(std::move(alg));
          }
        }
      }
      int i = m - 1;
      while (i >= 0 && inner[i] == k - 1) inner[i--] = 0;
      if (i < 0) break;
      ++inner[i];
    }
  }
  return out;
}

}  // namespace

std::vector<FiniteNablaAlgebra> lattices_of_size(int k) {
  if (k < 2 || k > kMaxAlgebraSize) throw InputError("algebra size must be between 2 and " + std::to_string(kMaxAlgebraSize));
  int m = k - 2;
  int bits = m * (m - 1);
  std::vector<FiniteNablaAlgebra> out;
  std::vector<unsigned> canon_seen;
  std::vector<int> perm(m);
  for (unsigned mask = 0; mask < (1u << bits); ++mask) {
    Leq leq = leq_from_mask(k, mask);
    if (!is_partial_order(leq)) continue;
    unsigned canon = mask;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      canon = std::min(canon, mask_under(k, mask, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::find(canon_seen.begin(), canon_seen.end(), canon) != canon_seen.end()) continue;
    FiniteNablaAlgebra l;
    l.size = k;
    l.leq = leq;
    l.bot = 0;
    l.top = k - 1;
    l.meet.assign(k, std::vector<int>(k));
    l.join.assign(k, std::vector<int>(k));
    bool lattice = true;
    for (int a = 0; a < k && lattice; ++a)
      for (int b = 0; b < k && lattice; ++b) {
        l.meet[a][b] = bound(leq, a, b, false);
        l.join[a][b] = bound(leq, a, b, true);
        if (l.meet[a][b] < 0 || l.join[a][b] < 0) lattice = false;
      }
    if (!lattice) continue;
    canon_seen.push_back(canon);
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<FiniteNablaAlgebra> enumerate_algebras(int max_size, bool need_heyting) {
  if (max_size > kMaxAlgebraSize) throw InputError("algebra size bound is " + std::to_string(kMaxAlgebraSize));
  static std::mutex mu;
  static std::map<std::pair<int, bool>, std::vector<FiniteNablaAlgebra>> cache;
  std::vector<FiniteNablaAlgebra> out;
  for (int k = 2; k <= max_size; ++k) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(k, need_heyting);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, algebras_of_size(k, need_heyting)).first;
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::optional<std::string> verify_algebra(const FiniteNablaAlgebra& a) {
  int k = a.size;
  if (static_cast<int>(a.leq.size()) != k || static_cast<int>(a.nabla.size()) != k) return "table sizes";
  for (int x = 0; x < k; ++x) {
    if (!a.le(a.bot, x) || !a.le(x, a.top)) return "bounds";
    for (int y = 0; y < k; ++y) {
      int m = a.meet[x][y], j = a.join[x][y];
      if (!a.le(m, x) || !a.le(m, y) || !a.le(x, j) || !a.le(y, j)) return "meet/join are not bounds";
      for (int z = 0; z < k; ++z) {
        if (a.le(z, x) && a.le(z, y) && !a.le(z, m)) return "meet is not greatest";
        if (a.le(x, z) && a.le(y, z) && !a.le(j, z)) return "join is not least";
      }
    }
  }
  if (a.nabla[a.top] != a.top || a.nabla[a.bot] != a.bot) return "nabla does not fix the bounds";
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (a.nabla[a.meet[x][y]] != a.meet[a.nabla[x]][a.nabla[y]]) return "nabla does not preserve meets";
      if (a.nabla[a.join[x][y]] != a.join[a.nabla[x]][a.nabla[y]]) return "nabla does not preserve joins";
      for (int c = 0; c < k; ++c) {
        if (a.le(a.meet[a.nabla[c]][x], y) != a.le(c, a.dyn_imp[x][y])) return "adjunction fails";
        if (a.heyt_imp && a.le(a.meet[c][x], y) != a.le(c, (*a.heyt_imp)[x][y])) return "heyting residual fails";
      }
    }
  if (a.heyt_imp && !a.distributive()) return "heyt_imp on a non-distributive lattice";
  return std::nullopt;
}

int evaluate(const Formula& f, const FiniteNablaAlgebra& a, const Valuation& v) {
  switch (f.op()) {
    case Op::Atom: {
      auto it = v.find(f.name());
      if (it == v.end()) throw InputError("valuation misses atom " + f.name());
      return it->second;
    }
    case Op::Top: return a.top;
    case Op::Bot: return a.bot;
    case Op::And: return a.meet[evaluate(f.lhs(), a, v)][evaluate(f.rhs(), a, v)];
    case Op::Or: return a.join[evaluate(f.lhs(), a, v)][evaluate(f.rhs(), a, v)];
    case Op::Dyn: return a.dyn_imp[evaluate(f.lhs(), a, v)][evaluate(f.rhs(), a, v)];
    case Op::Heyt:
      if (!a.heyt_imp) throw InputError("=> needs a Heyting algebra");
      return (*a.heyt_imp)[evaluate(f.lhs(), a, v)][evaluate(f.rhs(), a, v)];
    case Op::Nabla: return a.nabla[evaluate(f.body(), a, v)];
  }
  return a.bot;
}

bool holds(const Sequent& s, const FiniteNablaAlgebra& a, const Valuation& v) {
  int l = a.top;
  for (const auto& f : s.ant) l = a.meet[l][evaluate(f, a, v)];
  int r = s.suc ? evaluate(*s.suc, a, v) : a.bot;
  return a.le(l, r);
}

std::optional<Countermodel> refute(const Sequent& s, int max_size, bool need_heyting) {
  if (!need_heyting && !is_star(s)) throw InputError("refute: => needs Heyting algebras");
  auto names = atoms(s);
  std::vector<std::string> vars(names.begin(), names.end());
  // Distributive carriers only: the calculi prove distributivity through LOrN with context.
  for (const auto& alg : enumerate_algebras(max_size, true)) {
    std::vector<int> digits(vars.size(), 0);
    while (true) {
      Valuation v;
      for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = digits[i];
      if (!holds(s, alg, v)) return Countermodel{alg, v, s};
      int i = static_cast<int>(vars.size()) - 1;
      while (i >= 0 && digits[i] == alg.size - 1) digits[i--] = 0;
      if (i < 0) break;
      ++digits[i];
    }
  }
  return std::nullopt;
}

nlohmann::json algebra_to_json(const FiniteNablaAlgebra& a) {
  nlohmann::json j;
  j["size"] = a.size;
  std::vector<std::vector<int>> leq(a.size, std::vector<int>(a.size));
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y) leq[x][y] = a.le(x, y) ? 1 : 0;
  j["leq"] = leq;
  j["meet"] = a.meet;
  j["join"] = a.join;
  j["bot"] = a.bot;
  j["top"] = a.top;
  j["nabla"] = a.nabla;
  j["dyn_imp"] = a.dyn_imp;
  if (a.heyt_imp) j["heyt_imp"] = *a.heyt_imp;
  return j;
}

nlohmann::json countermodel_to_json(const Countermodel& c) {
  nlohmann::json j;
  j["algebra"] = algebra_to_json(c.algebra);
  j["valuation"] = c.valuation;
  j["sequent"] = c.refuted.str();
  return j;
}

}  // namespace ikd
