#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ikd/syntax.hpp"

namespace ikd {

enum class Base { IKD, IKDS, STLNH, STLN };

struct Calculus {
  Base base = Base::IKD;
  bool allow_cut = false;
  bool allow_hypotheses = false;

  static Calculus of(Base b);
  Calculus with_cut(bool on = true) const;
  Calculus with_hypotheses(bool on = true) const;
  bool star() const { return base == Base::IKDS || base == Base::STLN; }
  bool stl() const { return base == Base::STLNH || base == Base::STLN; }
};

const char* base_name(Base b);

enum class Rule {
  // iK_d (Figure 2 style)
  IdP, LBot, RTop, LW, Rw, LAndN, RAnd, LOrN, ROr1, ROr2, LDynImpN, RDynImp, LHeytImpN, RHeytImp, N,
  // STL only
  Lc, Cut, LAnd1, LAnd2, LOr, LDynImp, LHeytImp, Lw, Id,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);
bool rule_in(Rule r, const Calculus& c);
bool is_axiom(Rule r);

struct RuleInstance {
  Rule rule = Rule::IdP;
  std::optional<int> n;
  std::optional<Formula> principal;
  std::optional<Multiset> intro;
  std::optional<Formula> cut_formula;
  std::optional<int> cut_exponent;

  int exponent() const { return n.value_or(0); }
  int cut_n() const { return cut_exponent.value_or(0); }
};

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Sequent seq;
  bool hypothesis = false;
  RuleInstance inst;
  std::vector<Proof> premises;
  int height = 0;
  int size = 1;
};

// Unchecked node; used by readers that hand the result to check_proof.
Proof raw_node(Sequent s, RuleInstance inst, std::vector<Proof> premises);
Proof hypothesis(Sequent s);

// Computes the conclusion determined by an instance and its premises.
// Returns an error string when the premises do not fit the schema.
struct Inferred {
  std::optional<Sequent> conclusion;
  std::string violation;
};
Inferred infer_conclusion(const RuleInstance& inst, const std::vector<Sequent>& premises);

// Forward rule application; throws InternalError on a schema violation.
Proof apply(const RuleInstance& inst, std::vector<Proof> premises);

std::optional<std::string> check_instance(const Sequent& conclusion, const RuleInstance& inst,
                                          const std::vector<Sequent>& premises, const Calculus& calc);

struct CheckFailure {
  std::vector<int> path;
  std::string violation;
  std::string describe() const;
};
std::optional<CheckFailure> check_proof(const Proof& t, const Calculus& calc);
// Throws InternalError when t does not check.
void require_checks(const Proof& t, const Calculus& calc, const std::string& what);

std::vector<std::pair<RuleInstance, std::vector<Sequent>>> applicable_instances(const Sequent& goal,
                                                                                const Calculus& calc);

bool uses_cut(const Proof& t);
bool uses_hypotheses(const Proof& t);
bool mentions_heyting_rule(const Proof& t);
int count_rule(const Proof& t, Rule r);

// ---------------------------------------------------------------- instance shorthands
namespace mk {
RuleInstance idp(const Formula& p);
RuleInstance lbot();
RuleInstance rtop();
RuleInstance lw(Multiset sigma);
RuleInstance rw(const Formula& a);
RuleInstance land(int n, const Formula& principal);
RuleInstance rand(const Formula& principal);
RuleInstance lor(int n, const Formula& principal);
RuleInstance ror(int which, const Formula& principal);
RuleInstance ldyn(int n, const Formula& principal);
RuleInstance rdyn(const Formula& principal);
RuleInstance lheyt(int n, const Formula& principal);
RuleInstance rheyt(const Formula& principal);
RuleInstance nab();
RuleInstance lc(const Formula& a);
RuleInstance cut(const Formula& a, int n = 0);
RuleInstance land1(const Formula& principal);
RuleInstance land2(const Formula& principal);
RuleInstance lor_stl(const Formula& principal);
RuleInstance ldyn_stl(const Formula& principal);
RuleInstance lheyt_stl(const Formula& principal);
RuleInstance lw_stl(const Formula& a);
RuleInstance id(const Formula& a);
}  // namespace mk

// ---------------------------------------------------------------- derived proofs (iK_d)
Proof identity(const Formula& a);
Proof mp(const Formula& a, const Formula& b);
Proof nabla_box_left(const Proof& d, const Formula& a);
Proof box_mono(const Proof& d);
Proof abstraction(const Proof& d, const Multiset& gamma, const Multiset& sigma, const Formula& a);

// LW with the given multiset, or d itself when sigma is empty.
Proof weaken(const Proof& d, const Multiset& sigma);
// Weakens d (in iK_d) up to the target antecedent; target must include d's antecedent.
Proof weaken_to(const Proof& d, const Multiset& target);
// N applied k times.
Proof nabla_times(const Proof& d, int k);

}  // namespace ikd
