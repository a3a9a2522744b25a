#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ikd {

// Bad user input (exit code 2 at the CLI).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant (exit code 3 at the CLI).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct SyntaxError : InputError {
  SyntaxError(int line, int column, std::vector<std::string> expected, const std::string& found);
  int line;
  int column;
  std::vector<std::string> expected;
};

enum class Op : std::uint8_t { Atom, Top, Bot, And, Or, Dyn, Heyt, Nabla };

class Formula {
 public:
  struct Node;

  Formula() = default;

  Op op() const;
  const std::string& name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }
  const std::string& str() const;
  std::size_t hash() const;

  bool is(Op o) const { return op() == o; }
  bool binary() const;
  explicit operator bool() const { return p_ != nullptr; }

  bool operator==(const Formula& o) const;
  std::strong_ordering operator<=>(const Formula& o) const;

  static Formula make(Op op, std::string name, Formula l, Formula r);

 private:
  std::shared_ptr<const Node> p_;
};

struct Formula::Node {
  Op op;
  std::string name;
  Formula l, r;
  std::string text;
  std::size_t hash;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula atom(const std::string& name);
Formula top();
Formula bot();
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula dimp(Formula a, Formula b);
Formula himp(Formula a, Formula b);
Formula nabla(Formula a, int n = 1);
Formula box(Formula a);
// Builds the binary connective `op` (And, Or, Dyn, Heyt).
Formula binop(Op op, Formula a, Formula b);

bool valid_atom_name(const std::string& s);

using Multiset = std::vector<Formula>;  // always kept sorted

struct Sequent {
  Multiset ant;
  std::optional<Formula> suc;

  Sequent() = default;
  Sequent(Multiset a, std::optional<Formula> s = std::nullopt);

  std::string str() const;
  bool operator==(const Sequent& o) const = default;
};

// multiset helpers; arguments and results are sorted
Multiset ms(std::vector<Formula> v);
Multiset ms_sum(const Multiset& a, const Multiset& b);
Multiset ms_add(const Multiset& a, const Formula& f);
std::optional<Multiset> ms_diff(const Multiset& a, const Multiset& b);
std::optional<Multiset> ms_remove(const Multiset& a, const Formula& f);
std::size_t ms_count(const Multiset& a, const Formula& f);
bool ms_contains(const Multiset& a, const Formula& f);
bool ms_includes(const Multiset& a, const Multiset& b);
Multiset ms_nabla(const Multiset& a, int n = 1);
Multiset ms_box(const Multiset& a);
Multiset ms_set(const Multiset& a);  // drops repeated copies

Formula parse_formula(const std::string& text);
Sequent parse_sequent(const std::string& text);
inline const std::string& print_formula(const Formula& f) { return f.str(); }
inline std::string print_sequent(const Sequent& s) { return s.str(); }

struct NablaPrefix {
  int depth;
  Formula core;
};

int rank(const Formula& f);
std::set<std::string> atoms(const Formula& f);
std::set<std::string> atoms(const Multiset& g);
std::set<std::string> atoms(const Sequent& s);
NablaPrefix strip_nabla(const Formula& f);
std::vector<Formula> variants_up_to(const Formula& f, int d);
// true when no Heyting implication occurs
bool is_star(const Formula& f);
bool is_star(const Sequent& s);
int max_nabla_depth(const Formula& f);
int max_nabla_depth(const Sequent& s);
int formula_size(const Formula& f);

}  // namespace ikd
