#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ikd/search.hpp"
#include "ikd/transform.hpp"
#include "proofgen.hpp"

using namespace ikd;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }
const Calculus kIKD = Calculus::of(Base::IKD);
const Calculus kIKDS = Calculus::of(Base::IKDS);

Proof found(const char* s) {
  auto out = prove(S(s), kIKD, SearchBudget{});
  REQUIRE(out.found());
  return *out.proof;
}

void checks(const Proof& t, const Calculus& c) {
  auto f = check_proof(t, c);
  INFO((f ? f->describe() : std::string()));
  CHECK_FALSE(f);
}

}  // namespace

TEST_CASE("inversion examples") {
  Proof t = apply(mk::nab(), {identity(F("p & q"))});
  Proof out = invert_and(t, F("#(p & q)"));
  CHECK(out->seq == S("#p, #q |- #(p & q)"));
  CHECK(out->height <= t->height);
  checks(out, kIKD);

  Proof w = weaken(identity(F("r")), {F("#(p | q)")});
  auto [l, r] = invert_or(w, F("#(p | q)"));
  CHECK(l->seq == S("#p, r |- r"));
  CHECK(r->seq == S("#q, r |- r"));
  CHECK(l->inst.rule == Rule::LW);
  CHECK(*l->inst.intro == Multiset{F("#p")});

  Proof h = apply(mk::nab(), {weaken(identity(F("r")), {F("p => q")})});
  Proof hi = invert_heyt(h, F("#(p => q)"));
  CHECK(hi->seq == S("#q, #r |- #r"));
  CHECK(hi->inst.rule == Rule::N);

  CHECK_THROWS_AS(invert_and(t, F("#(p | q)")), InputError);
  CHECK_THROWS_AS(invert_and(t, F("p & q")), InputError);
}

TEST_CASE("contraction examples") {
  Proof t = weaken(identity(F("p")), {F("p")});
  Proof out = contract(t, F("p"));
  CHECK(out->seq == S("p |- p"));
  CHECK(out->inst.rule == Rule::IdP);

  Proof pair = found("#(p & q), #(p & q) |- #q");
  checks(contract(pair, F("#(p & q)")), kIKD);

  // duplicated principal #(B -> C) of LDynImpN
  Proof d = mp(F("p"), F("q"));
  Proof dd = weaken(d, {F("#(p -> q)")});
  Proof c = contract(dd, F("#(p -> q)"));
  CHECK(c->seq == d->seq);
  CHECK(c->height <= dd->height);

  CHECK_THROWS_AS(contract(identity(F("p")), F("p")), InputError);
}

TEST_CASE("contraction of a principal conjunction inverts") {
  // LAndN whose premise keeps only one copy of the principal
  Formula pq = F("p & q");
  Proof prem = weaken(identity(F("p")), ms({F("q"), pq}));
  Proof t = apply(mk::land(0, pq), {prem});
  REQUIRE(t->seq == S("p & q, p & q |- p"));
  Proof out = contract(t, pq);
  CHECK(out->seq == S("p & q |- p"));
  CHECK(out->height <= t->height);
  checks(out, kIKD);
}

TEST_CASE("cut_once examples") {
  Proof id = identity(F("p"));
  Proof d2 = weaken(identity(F("p")), {F("q")});
  Proof out = cut_once(id, d2, 0);
  CHECK(out->seq == S("q, p |- p"));

  Proof n1 = apply(mk::nab(), {identity(F("p"))});
  Proof o2 = cut_once(id, n1, 1);
  CHECK(o2->seq == S("#p |- #p"));
  checks(o2, kIKD);

  Formula bc = F("p & q");
  Proof d1 = apply(mk::rand(bc), {weaken(identity(F("p")), {F("q")}), weaken(identity(F("q")), {F("p")})});
  REQUIRE(d1->seq == S("p, q |- p & q"));
  Proof left = apply(mk::land(1, F("#(p & q)")), {weaken(apply(mk::nab(), {identity(F("q"))}), {F("#p")})});
  REQUIRE(left->seq == S("#(p & q) |- #q"));
  Proof o3 = cut_once(d1, left, 1);
  CHECK(o3->seq == S("#p, #q |- #q"));
  checks(o3, kIKD);

  CHECK_THROWS_AS(cut_once(id, identity(F("q")), 0), InputError);
}

TEST_CASE("eliminate_cuts") {
  Proof cf = found("p & q |- q & p");
  CHECK(eliminate_cuts(cf) == cf);

  Proof stl = nabla_dist_proof(Op::Or, 1, F("p"), F("q"));
  REQUIRE(stl->seq == S("#(p | q) |- #p | #q"));
  CHECK(uses_cut(stl));
  // the same derivation read as an IKD+cut proof
  Proof ikd_cut = ikd_to_stl(stl_to_ikd(stl, Calculus::of(Base::STLNH)), kIKD);
  CHECK(ikd_cut->seq == stl->seq);
  Proof with_cut = apply(mk::cut(F("p")), {identity(F("p")), weaken(found("#(p | q) |- #p | #q"), {F("p")})});
  Proof a = eliminate_cuts(with_cut, CutStrategy::LeftFirst);
  Proof b = eliminate_cuts(with_cut, CutStrategy::RightFirst);
  CHECK(a->seq == with_cut->seq);
  CHECK(b->seq == with_cut->seq);
  CHECK_FALSE(uses_cut(a));
  CHECK_FALSE(uses_cut(b));
}

TEST_CASE("nabla_dist_proof") {
  CHECK(nabla_dist_proof(Op::Or, 1, F("p"), F("q"))->seq == S("#(p | q) |- #p | #q"));
  CHECK(nabla_dist_proof(Op::And, 0, F("p"), F("q"))->seq == S("p & q |- p & q"));
  CHECK(nabla_dist_proof(Op::Dyn, 2, F("p"), F("q"))->seq == S("##(p -> q) |- ##p -> ##q"));
  CHECK(nabla_dist_proof(Op::Heyt, 3, F("p"), F("q"))->seq == S("###(p => q) |- ###p => ###q"));
  for (int n = 0; n <= 3; ++n) {
    Proof t = nabla_dist_proof(Op::Or, n, F("p -> q"), F("r"));
    checks(t, Calculus::of(Base::STLN));
  }
  CHECK_THROWS_AS(nabla_dist_proof(Op::Nabla, 1, F("p"), F("q")), InputError);
}

TEST_CASE("translations of single rules") {
  Proof id = apply(mk::id(F("p -> q")), {});
  Proof t = stl_to_ikd(id, Calculus::of(Base::STLNH));
  CHECK(t->seq == id->seq);
  CHECK(t->inst.rule == Rule::RDynImp);

  Proof lc = apply(mk::lc(F("p")), {apply(mk::lw_stl(F("p")), {apply(mk::id(F("p")), {})})});
  Proof tl = stl_to_ikd(lc, Calculus::of(Base::STLN));
  CHECK(tl->seq == S("p |- p"));
  CHECK(tl->inst.rule == Rule::IdP);

  Proof la = apply(mk::land1(F("p & q")), {apply(mk::id(F("p")), {})});
  Proof ta = stl_to_ikd(la, Calculus::of(Base::STLN));
  CHECK(ta->inst.rule == Rule::LAndN);
  CHECK(ta->premises[0]->inst.rule == Rule::LW);

  Proof ld = found("##(p -> q), #p |- #q");
  Proof sd = ikd_to_stl(ld, kIKD);
  CHECK(sd->seq == ld->seq);
  CHECK(count_rule(sd, Rule::LDynImp) >= 1);
  CHECK(count_rule(sd, Rule::Cut) >= 1);

  Proof land = apply(mk::land(2, F("##(p & q)")), {weaken(identity(F("##p")), {F("##q")})});
  Proof sl = ikd_to_stl(land, kIKDS);
  checks(sl, Calculus::of(Base::STLN));

  CHECK(ikd_to_stl(identity(F("p")), kIKD)->inst.rule == Rule::Id);
}

TEST_CASE("deduction theorem examples") {
  Formula a = F("p");
  Proof plain = identity(F("q"));
  auto r0 = deduction_export(plain, a);
  CHECK(r0.sigma.empty());
  CHECK(r0.proof->seq == plain->seq);

  Proof leaf = hypothesis(Sequent({}, a));
  auto r1 = deduction_export(leaf, a);
  CHECK(r1.sigma == Multiset{a});
  CHECK(r1.proof->seq == S("p |- p"));

  Proof n = apply(mk::nab(), {leaf});
  auto r2 = deduction_export(n, a);
  CHECK(r2.sigma == Multiset{F("#p")});
  CHECK(r2.proof->seq == S("#p |- #p"));

  Proof back = deduction_import(a, r2.sigma, r2.proof);
  CHECK(back->seq == S("|- #p"));
  CHECK(count_rule(back, Rule::Cut) == 1);
  CHECK(count_rule(back, Rule::N) >= 1);

  Proof boxed = deduction_import(a, {F("T -> p")}, identity(F("T -> p")));
  CHECK(boxed->seq == S("|- T -> p"));
  CHECK(count_rule(boxed, Rule::Cut) == 1);

  CHECK_THROWS_AS(deduction_import(a, {F("q")}, identity(F("q"))), InputError);
  CHECK_THROWS_AS(deduction_export(hypothesis(Sequent({}, F("q"))), a), InputError);
  CHECK(is_variant(a, F("#(T -> #p)")));
  CHECK_FALSE(is_variant(a, F("#(q -> p)")));
}

TEST_CASE("random STL proofs translate, eliminate cuts and round trip") {
  std::mt19937 rng(7);
  for (bool heyting : {true, false}) {
    testing::ProofGen gen(true, heyting);
    Calculus src = Calculus::of(heyting ? Base::STLNH : Base::STLN);
    int cuts = 0;
    for (int i = 0; i < 150; ++i) {
      Proof t = gen(rng, 6);
      REQUIRE_FALSE(check_proof(t, src));
      cuts += uses_cut(t);
      Proof k = stl_to_ikd(t, src);
      CHECK(k->seq == t->seq);
      CHECK_FALSE(uses_cut(k));
      if (!heyting) CHECK_FALSE(mentions_heyting_rule(k));
      Proof back = ikd_to_stl(k, translation_target(src));
      CHECK(back->seq == t->seq);
      CHECK_FALSE(check_proof(back, src));
    }
    CHECK(cuts > 20);
  }
}

TEST_CASE("random iK_d proofs: inversion and contraction never raise the height") {
  std::mt19937 rng(11);
  testing::ProofGen gen(false, true);
  int inversions = 0, contractions = 0;
  for (int i = 0; i < 300; ++i) {
    Proof t = gen(rng, 6);
    REQUIRE_FALSE(check_proof(t, kIKD));
    for (const auto& f : ms_set(t->seq.ant)) {
      Op op = strip_nabla(f).core.op();
      if (op == Op::And) {
        checks(invert_and(t, f), kIKD);
        ++inversions;
      } else if (op == Op::Or) {
        auto [l, r] = invert_or(t, f);
        CHECK(l->height <= t->height);
        CHECK(r->height <= t->height);
        ++inversions;
      } else if (op == Op::Heyt) {
        CHECK(invert_heyt(t, f)->height <= t->height);
        ++inversions;
      }
      if (ms_count(t->seq.ant, f) >= 2) {
        Proof c = contract(t, f);
        CHECK(c->height <= t->height);
        ++contractions;
      }
    }
  }
  CHECK(inversions > 100);
  CHECK(contractions > 30);
}

TEST_CASE("cut strategies agree on endsequents") {
  std::mt19937 rng(5);
  testing::ProofGen gen(true, true);
  int compared = 0;
  for (int i = 0; i < 120; ++i) {
    Proof t = gen(rng, 6);
    if (!uses_cut(t)) continue;
    Proof with_cut = ikd_to_stl(stl_to_ikd(t, Calculus::of(Base::STLNH)), kIKD);
    // read back as an IKD+cut proof of the same endsequent
    Proof k = stl_to_ikd(with_cut, Calculus::of(Base::STLNH));
    Proof c = apply(mk::cut(F("p")), {identity(F("p")), weaken(k, {F("p")})});
    Proof a = eliminate_cuts(c, CutStrategy::LeftFirst);
    Proof b = eliminate_cuts(c, CutStrategy::RightFirst);
    CHECK(a->seq == b->seq);
    ++compared;
  }
  CHECK(compared > 10);
}

TEST_CASE("random hypothesis proofs pass the deduction round trip") {
  std::mt19937 rng(3);
  testing::FormulaGen fg;
  Calculus hyp = Calculus::of(Base::IKD).with_cut().with_hypotheses();
  for (int i = 0; i < 60; ++i) {
    Formula a = fg(rng, 2);
    testing::ProofGen gen(false, true);
    Proof side = gen(rng, 4);
    // a hypothesis leaf wrapped by N, box_mono and weakening, joined to a random proof by RAnd
    Proof h = hypothesis(Sequent({}, a));
    int k = std::uniform_int_distribution<int>(0, 2)(rng);
    h = nabla_times(h, k);
    if (std::uniform_int_distribution<int>(0, 1)(rng)) h = box_mono(h);
    if (!side->seq.suc) side = apply(mk::rw(F("q")), {side});
    Multiset u = side->seq.ant;
    Proof t = apply(mk::rand(conj(*h->seq.suc, *side->seq.suc)), {weaken(h, u), side});
    REQUIRE_FALSE(check_proof(t, hyp));
    auto r = deduction_export(t, a);
    CHECK(r.proof->seq == Sequent(ms_sum(t->seq.ant, r.sigma), t->seq.suc));
    for (const auto& s : r.sigma) CHECK(is_variant(a, s));
    Proof back = deduction_import(a, r.sigma, r.proof);
    CHECK(back->seq == t->seq);
  }
}
