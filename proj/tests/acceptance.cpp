#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "hypgen.hpp"
#include "ikd/algebra.hpp"
#include "ikd/meta.hpp"
#include "ikd/search.hpp"
#include "ikd/transform.hpp"
#include "proofgen.hpp"
#include "vissergen.hpp"

using namespace ikd;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& what) {
    ok = false;
    if (problems.size() < 5) problems.push_back(what);
  }
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Formula F(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }

const Calculus kIKD = Calculus::of(Base::IKD);
const Calculus kIKDS = Calculus::of(Base::IKDS);
const SearchBudget kGolden{30, 3, 200000};

bool checks(const Proof& t, const Calculus& c) { return !check_proof(t, c); }

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Result golden_suite() {
  Result r;
  std::mt19937 rng(101);
  testing::FormulaGen fg;
  double slowest = 0;
  int proved = 0, refuted = 0;

  auto provable = [&](const Sequent& s) {
    auto t0 = Clock::now();
    auto out = prove(s, kIKD, kGolden);
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    r.require(out.found(), "not found: " + s.str());
    r.require(dt <= 1.0, "over 1 s: " + s.str());
    if (out.found()) {
      r.require(checks(*out.proof, kIKD) && (*out.proof)->seq == s, "bad proof: " + s.str());
      ++proved;
    }
  };
  auto unprovable = [&](const Sequent& s) {
    auto t0 = Clock::now();
    auto out = prove(s, kIKD, kGolden);
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    r.require(!out.found(), "unexpectedly found: " + s.str());
    r.require(dt <= 1.0, "over 1 s: " + s.str());
    auto cm = refute(s, 4, true);
    r.require(cm.has_value(), "no countermodel of size <= 4: " + s.str());
    if (cm) {
      r.require(!holds(s, cm->algebra, cm->valuation), "countermodel does not refute: " + s.str());
      ++refuted;
    }
  };

  for (int i = 0; i < 50; ++i) {
    Formula a = fg(rng, 3);
    provable(Sequent({a}, a));
  }
  for (int i = 0; i < 20; ++i) {
    Formula a = fg(rng, 2), b = fg(rng, 2);
    provable(Sequent({a, nabla(dimp(a, b))}, b));
  }
  // Gamma, #[]A |- Delta from Gamma, A |- Delta
  std::vector<Sequent> bases = {S("p & q |- p"), S("p, q |- p & q"), S("#(p -> q), p |- q"), S("p | q |- q | p"),
                                S("p => q, p |- q"), S("F |- p"), S("#p, p -> q |- T")};
  for (int i = 0; i < 10; ++i) {
    Formula a = fg(rng, 2);
    bases.push_back(Sequent({a}, a));
  }
  for (const auto& base : bases) {
    if (!prove(base, kIKD, kGolden).found()) {
      r.fail("base not provable: " + base.str());
      continue;
    }
    for (const auto& a : ms_set(base.ant)) {
      Multiset g = base.ant;
      g.erase(std::find(g.begin(), g.end(), a));
      g.push_back(nabla(dimp(top(), a)));
      provable(Sequent(g, base.suc));
    }
  }
  provable(S("#(p | q) |- #p | #q"));
  const std::vector<std::pair<Formula, Formula>> pairs = {{F("p"), F("q")}, {F("p & r"), F("q")},
                                                          {F("#p"), F("q -> r")}};
  for (int n = 0; n <= 3; ++n)
    for (const auto& [a, b] : pairs) {
      provable(Sequent({nabla(conj(a, b), n)}, conj(nabla(a, n), nabla(b, n))));
      provable(Sequent({nabla(disj(a, b), n)}, disj(nabla(a, n), nabla(b, n))));
      provable(Sequent({nabla(dimp(a, b), n)}, dimp(nabla(a, n), nabla(b, n))));
      provable(Sequent({nabla(himp(a, b), n)}, himp(nabla(a, n), nabla(b, n))));
    }

  unprovable(S("p |- #p"));
  unprovable(S("#p |- p"));
  unprovable(S("|- p | (p -> F)"));

  // the oracle fixes which direction of the Heyting distribution is valid
  Sequent fwd = S("#(p => q) |- #p => #q"), conv = S("#p => #q |- #(p => q)");
  bool fwd_valid = !refute(fwd, 4, true), conv_valid = !refute(conv, 4, true);
  r.require(fwd_valid != conv_valid, "oracle does not separate the two Heyting distribution directions");
  if (fwd_valid) provable(fwd);
  else unprovable(fwd);
  if (conv_valid) provable(conv);
  else unprovable(conv);

  std::ostringstream os;
  os << proved << " provable, " << refuted << " refuted with countermodels, slowest " << slowest << " s; "
     << (fwd_valid ? "#(p => q) |- #p => #q provable, converse refuted" : "converse provable");
  r.detail = os.str();
  return r;
}

// shared corpus for the translation criteria
std::vector<std::pair<Proof, Calculus>> stl_corpus() {
  std::vector<std::pair<Proof, Calculus>> out;
  std::mt19937 rng(202);
  for (bool heyting : {true, false}) {
    testing::ProofGen gen(true, heyting);
    Calculus src = Calculus::of(heyting ? Base::STLNH : Base::STLN);
    for (int i = 0; i < 150; ++i) out.emplace_back(gen(rng, 10), src);
  }
  return out;
}

Result stl_translation(const std::vector<std::pair<Proof, Calculus>>& corpus) {
  Result r;
  auto t0 = Clock::now();
  int cuts = 0;
  for (const auto& [t, src] : corpus) {
    r.require(checks(t, src), "generated proof does not check: " + t->seq.str());
    cuts += uses_cut(t);
    Proof k = stl_to_ikd(t, src);
    r.require(!uses_cut(k), "translation uses cut: " + t->seq.str());
    r.require(checks(k, translation_target(src)), "translation does not check: " + t->seq.str());
    r.require(k->seq == t->seq, "endsequent changed: " + t->seq.str());
  }
  double dt = seconds_since(t0);
  r.require(dt < 120, "over 2 min");
  std::ostringstream os;
  os << corpus.size() << " proofs (" << cuts << " with cut) in " << dt << " s";
  r.detail = os.str();
  return r;
}

Result admissibility() {
  Result r;
  std::mt19937 rng(303);
  testing::ProofGen gen(false, true);
  int proofs = 0, inversions = 0, contractions = 0;
  for (int tries = 0; proofs < 500 && tries < 5000; ++tries) {
    Proof t = gen(rng, 8);
    r.require(checks(t, kIKD), "generated proof does not check");
    int before = inversions + contractions;
    auto ok = [&](const Proof& u, const Proof& of, const char* what) {
      r.require(u->height <= of->height, std::string(what) + " raises height: " + of->seq.str());
      r.require(checks(u, kIKD), std::string(what) + " does not check: " + of->seq.str());
    };
    for (const auto& f : ms_set(t->seq.ant)) {
      Op op = strip_nabla(f).core.op();
      if (op == Op::And) {
        ok(invert_and(t, f), t, "invert_and");
        ++inversions;
      } else if (op == Op::Or) {
        auto [a, b] = invert_or(t, f);
        ok(a, t, "invert_or");
        ok(b, t, "invert_or");
        ++inversions;
      } else if (op == Op::Heyt) {
        ok(invert_heyt(t, f), t, "invert_heyt");
        ++inversions;
      }
      if (ms_count(t->seq.ant, f) >= 2) {
        ok(contract(t, f), t, "contract");
        ++contractions;
      }
    }
    // a duplicated antecedent formula is always contractible
    if (!t->seq.ant.empty()) {
      Formula f = t->seq.ant[rng() % t->seq.ant.size()];
      Proof w = weaken(t, {f});
      ok(contract(w, f), w, "contract");
      ++contractions;
    }
    proofs += inversions + contractions > before;
  }
  r.require(proofs == 500, "fewer than 500 proofs exercised");
  std::ostringstream os;
  os << proofs << " proofs, " << inversions << " inversions, " << contractions << " contractions";
  r.detail = os.str();
  return r;
}

Result round_trip(const std::vector<std::pair<Proof, Calculus>>& corpus) {
  Result r;
  for (const auto& [t, src] : corpus) {
    Proof k = stl_to_ikd(t, src);
    Proof back = ikd_to_stl(k, translation_target(src));
    r.require(back->seq == t->seq, "endsequent changed: " + t->seq.str());
    r.require(checks(back, src), "round trip does not check: " + t->seq.str());
  }
  r.detail = std::to_string(corpus.size()) + " proofs";
  return r;
}

Result soundness() {
  Result r;
  auto t0 = Clock::now();
  std::mt19937 rng(404);
  testing::FormulaGen fg;
  fg.atom_names = {"p", "q"};
  const SearchBudget budget{20, 2, 20000};
  int found = 0;
  for (int i = 0; i < 500; ++i) {
    Multiset g;
    int n = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int j = 0; j < n; ++j) g.push_back(fg(rng, 5));
    std::optional<Formula> d;
    if (rng() % 5) d = fg(rng, 5);
    // bias towards provable goals that reuse an antecedent formula
    if (!g.empty() && rng() % 3 == 0) d = rng() % 2 ? g[0] : disj(fg(rng, 2), g[0]);
    Sequent s(g, d);
    auto out = prove(s, kIKD, budget);
    if (!out.found()) continue;
    ++found;
    r.require(checks(*out.proof, kIKD), "found proof does not check: " + s.str());
    r.require(!refute(s, 4, true), "found sequent refuted: " + s.str());
  }
  double dt = seconds_since(t0);
  r.require(dt < 600, "over 10 min");
  r.require(found > 0, "no sequent found");
  std::ostringstream os;
  os << "500 sequents, " << found << " found, none refuted at size <= 4, " << dt << " s";
  r.detail = os.str();
  return r;
}

Result interpolation() {
  Result r;
  std::mt19937 rng(505);
  testing::ProofGen gen(false, true);
  int done = 0;
  for (int i = 0; i < 250; ++i) {
    Proof t = gen(rng, 6);
    std::vector<bool> split;
    Multiset g1, g2;
    for (const auto& f : t->seq.ant) {
      split.push_back(rng() % 2);
      (split.back() ? g1 : g2).push_back(f);
    }
    auto res = interpolate(t, split);
    auto shared = atoms(g2);
    if (t->seq.suc) shared.merge(atoms(*t->seq.suc));
    r.require(subset(atoms(res.interpolant), atoms(g1)) && subset(atoms(res.interpolant), shared),
              "variable condition fails: " + t->seq.str());
    r.require(res.left_proof->seq == Sequent(g1, res.interpolant), "left endsequent: " + t->seq.str());
    Multiset right = g2;
    right.push_back(res.interpolant);
    r.require(res.right_proof->seq == Sequent(right, t->seq.suc), "right endsequent: " + t->seq.str());
    r.require(checks(res.left_proof, kIKD) && checks(res.right_proof, kIKD), "proofs do not check: " + t->seq.str());
    ++done;
  }
  // base cases
  Proof idp = apply(mk::idp(atom("p")), {});
  r.require(interpolate(idp, {true}).interpolant == atom("p"), "Id^p in Gamma1");
  r.require(interpolate(idp, {false}).interpolant == top(), "Id^p in Gamma2");
  Proof lb = apply(mk::lbot(), {});
  r.require(interpolate(lb, {true}).interpolant == bot(), "LF in Gamma1");
  r.require(interpolate(apply(mk::rtop(), {}), {}).interpolant == top(), "RT");
  auto fp = interpolate_formula(F("p"), F("p"), SearchBudget{});
  auto ff = interpolate_formula(F("F"), F("q & r"), SearchBudget{});
  auto ft = interpolate_formula(F("q"), F("T"), SearchBudget{});
  r.require(fp && fp->interpolant == atom("p"), "p / p gives p");
  r.require(ff && ff->interpolant == bot(), "F / q & r gives F");
  r.require(ft && ft->interpolant == top(), "q / T gives T");
  r.detail = std::to_string(done) + " partitioned proofs plus base cases p, T, F";
  return r;
}

Result visser() {
  Result r;
  std::mt19937 rng(606);
  testing::FormulaGen g;
  const SearchBudget budget{20, 2, 20000};
  const std::vector<Formula> valid_side = {F("p -> p"), F("#T"), F("(p & q) => p"), F("T -> T"), F("#(q => q)"),
                                           F("p => p | r"), F("T -> #T")};
  int splits = 0;
  for (int tries = 0; splits < 50 && tries < 2000; ++tries) {
    Formula a = g(rng, 2), b = g(rng, 2);
    if (rng() % 2) (rng() % 2 ? a : b) = valid_side[rng() % valid_side.size()];
    auto out = prove(Sequent({}, disj(a, b)), kIKD, budget);
    if (!out.proof) continue;
    auto s = split_disjunction(*out.proof);
    Formula side = s.left ? a : b;
    r.require(s.proof->seq == Sequent({}, side) && checks(s.proof, kIKD), "split: " + disj(a, b).str());
    r.require(!refute(s.proof->seq, 4, true), "split side refuted: " + side.str());
    ++splits;
  }
  r.require(splits == 50, "split corpus short");

  testing::VisserGen vg;
  std::ostringstream os;
  os << splits << " disjunction splits";
  for (VisserMode mode : {VisserMode::Disjunctive, VisserMode::Implicative, VisserMode::Heyting}) {
    int done = 0;
    for (int tries = 0; done < 50 && tries < 5000; ++tries) {
      auto inst = vg(rng, mode);
      if (!inst) continue;
      VisserVerdict v = mode == VisserMode::Disjunctive   ? visser_disjunctive(inst->proof, inst->x)
                        : mode == VisserMode::Implicative ? visser_implicative(inst->proof, inst->x, inst->k)
                                                          : visser_heyting(inst->proof, inst->x, inst->k);
      Sequent want = verdict_sequent(inst->x, mode, inst->k, inst->goal, v);
      std::string name = std::string(visser_mode_name(mode)) + ": " + inst->proof->seq.str();
      r.require(v.proof->seq == want, "verdict sequent " + name);
      r.require(checks(v.proof, kIKD), "verdict proof " + name);
      r.require(!refute(want, 4, true), "verdict refuted " + name);
      ++done;
    }
    r.require(done == 50, std::string("short Visser corpus ") + visser_mode_name(mode));
    os << ", " << done << " " << visser_mode_name(mode);
  }
  r.detail = os.str();
  return r;
}

Result deduction() {
  Result r;
  std::mt19937 rng(707);
  testing::FormulaGen fg;
  testing::HypGen hg;
  Calculus hyp = kIKD.with_cut().with_hypotheses();
  int cuts = 0;
  for (int i = 0; i < 100; ++i) {
    Formula a = fg(rng, 2);
    Proof t = hg(rng, a, 1 + i % 4);
    if (!checks(t, hyp)) {
      r.fail("generated proof does not check: " + t->seq.str());
      continue;
    }
    cuts += uses_cut(t);
    auto ex = deduction_export(t, a);
    r.require(ex.proof->seq == Sequent(ms_sum(t->seq.ant, ex.sigma), t->seq.suc), "export endsequent: " + t->seq.str());
    r.require(checks(ex.proof, kIKD), "export does not check in iK_d: " + t->seq.str());
    for (const auto& s : ex.sigma) r.require(is_variant(a, s), "not a variant: " + s.str());
    Proof back = deduction_import(a, ex.sigma, ex.proof);
    r.require(back->seq == t->seq, "import endsequent: " + t->seq.str());
    r.require(checks(back, hyp), "import does not check: " + t->seq.str());
  }
  r.detail = "100 hypothesis proofs (" + std::to_string(cuts) + " with cut)";
  return r;
}

Result conservativity() {
  Result r;
  std::mt19937 rng(808);
  testing::ProofGen gen(false, false);
  testing::FormulaGen fg;
  fg.heyting = false;
  const SearchBudget budget{20, 2, 20000};
  int agree = 0, found = 0;
  for (int i = 0; i < 100; ++i) {
    Sequent s;
    if (i % 2 == 0) {
      s = gen(rng, 5)->seq;
    } else {
      Multiset g;
      for (int j = 0, n = rng() % 3; j < n; ++j) g.push_back(fg(rng, 3));
      s = Sequent(g, fg(rng, 3));
    }
    auto a = prove(s, kIKD, budget), b = prove(s, kIKDS, budget);
    r.require(a.found() == b.found(), "provability differs: " + s.str());
    agree += a.found() == b.found();
    if (a.found()) {
      ++found;
      r.require(!mentions_heyting_rule(*a.proof), "iK_d proof uses a Heyting rule: " + s.str());
    }
    if (b.found()) r.require(checks(*b.proof, kIKDS), "iK_d* proof does not check: " + s.str());
  }
  std::ostringstream os;
  os << "100 Heyting-free sequents, " << agree << " agree, " << found << " provable";
  r.detail = os.str();
  return r;
}

}  // namespace

int main() {
  auto corpus = stl_corpus();
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"golden sequent suite", golden_suite},
      {"STL to iK_d translation", [&] { return stl_translation(corpus); }},
      {"inversion and contraction", admissibility},
      {"translation round trip", [&] { return round_trip(corpus); }},
      {"search soundness against the algebra oracle", soundness},
      {"Craig interpolation", interpolation},
      {"disjunction property and Visser extraction", visser},
      {"deduction export and import", deduction},
      {"Heyting-free conservativity", conservativity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    failed += !r.ok;
    std::printf("[%s] %zu %s: %s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str());
    for (const auto& p : r.problems) std::printf("       %s\n", p.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
