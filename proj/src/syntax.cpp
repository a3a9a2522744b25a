#include "ikd/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ikd {

namespace {

int level(Op op) {
  switch (op) {
    case Op::Dyn:
    case Op::Heyt:
      return 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    default:
      return 4;
  }
}

std::string wrap(const Formula& f, int need) {
  if (level(f.op()) < need) return "(" + f.str() + ")";
  return f.str();
}

std::string render(Op op, const std::string& name, const Formula& l, const Formula& r) {
  switch (op) {
    case Op::Atom:
      return name;
    case Op::Top:
      return "T";
    case Op::Bot:
      return "F";
    case Op::Nabla:
      return "#" + wrap(l, 4);
    case Op::And:
      return wrap(l, 3) + " & " + wrap(r, 4);
    case Op::Or:
      return wrap(l, 2) + " | " + wrap(r, 3);
    case Op::Dyn:
      return wrap(l, 2) + " -> " + wrap(r, 1);
    case Op::Heyt:
      return wrap(l, 2) + " => " + wrap(r, 1);
  }
  return {};
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, std::vector<std::string> exp, const std::string& found)
    : InputError([&] {
        std::ostringstream os;
        os << "syntax error at " << line << ":" << column << ": found " << found << ", expected one of {";
        for (std::size_t i = 0; i < exp.size(); ++i) os << (i ? ", " : "") << exp[i];
        os << "}";
        return os.str();
      }()),
      line(line),
      column(column),
      expected(std::move(exp)) {}

Op Formula::op() const { return p_->op; }
const std::string& Formula::name() const { return p_->name; }
const Formula& Formula::lhs() const { return p_->l; }
const Formula& Formula::rhs() const { return p_->r; }
const std::string& Formula::str() const { return p_->text; }
std::size_t Formula::hash() const { return p_->hash; }
bool Formula::binary() const {
  Op o = op();
  return o == Op::And || o == Op::Or || o == Op::Dyn || o == Op::Heyt;
}

bool Formula::operator==(const Formula& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  return p_->hash == o.p_->hash && p_->text == o.p_->text;
}

std::strong_ordering Formula::operator<=>(const Formula& o) const {
  if (p_ == o.p_) return std::strong_ordering::equal;
  int c = p_->text.compare(o.p_->text);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Formula Formula::make(Op op, std::string name, Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->text = render(op, name, l, r);
  n->hash = std::hash<std::string>{}(n->text);
  n->name = std::move(name);
  n->l = std::move(l);
  n->r = std::move(r);
  Formula f;
  f.p_ = std::move(n);
  return f;
}

bool valid_atom_name(const std::string& s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Formula atom(const std::string& name) {
  if (!valid_atom_name(name)) throw InputError("invalid atom name '" + name + "'");
  return Formula::make(Op::Atom, name, {}, {});
}

Formula top() {
  static const Formula t = Formula::make(Op::Top, "", {}, {});
  return t;
}

Formula bot() {
  static const Formula b = Formula::make(Op::Bot, "", {}, {});
  return b;
}

Formula conj(Formula a, Formula b) { return Formula::make(Op::And, "", std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return Formula::make(Op::Or, "", std::move(a), std::move(b)); }
Formula dimp(Formula a, Formula b) { return Formula::make(Op::Dyn, "", std::move(a), std::move(b)); }
Formula himp(Formula a, Formula b) { return Formula::make(Op::Heyt, "", std::move(a), std::move(b)); }
Formula box(Formula a) { return dimp(top(), std::move(a)); }

Formula nabla(Formula a, int n) {
  for (int i = 0; i < n; ++i) a = Formula::make(Op::Nabla, "", std::move(a), {});
  return a;
}

Formula binop(Op op, Formula a, Formula b) {
  if (op != Op::And && op != Op::Or && op != Op::Dyn && op != Op::Heyt)
    throw InternalError("binop: not a binary connective");
  return Formula::make(op, "", std::move(a), std::move(b));
}

Sequent::Sequent(Multiset a, std::optional<Formula> s) : ant(ms(std::move(a))), suc(std::move(s)) {}

std::string Sequent::str() const {
  std::string out;
  for (std::size_t i = 0; i < ant.size(); ++i) {
    if (i) out += ", ";
    out += ant[i].str();
  }
  out += ant.empty() ? "|-" : " |-";
  if (suc) out += " " + suc->str();
  return out;
}

Multiset ms(std::vector<Formula> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Multiset ms_sum(const Multiset& a, const Multiset& b) {
  Multiset out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Multiset ms_add(const Multiset& a, const Formula& f) {
  Multiset out = a;
  out.insert(std::upper_bound(out.begin(), out.end(), f), f);
  return out;
}

std::optional<Multiset> ms_diff(const Multiset& a, const Multiset& b) {
  Multiset out;
  std::size_t j = 0;
  for (const auto& f : a) {
    if (j < b.size() && b[j] == f) {
      ++j;
      continue;
    }
    if (j < b.size() && b[j] < f) return std::nullopt;
    out.push_back(f);
  }
  if (j != b.size()) return std::nullopt;
  return out;
}

std::optional<Multiset> ms_remove(const Multiset& a, const Formula& f) {
  auto it = std::lower_bound(a.begin(), a.end(), f);
  if (it == a.end() || !(*it == f)) return std::nullopt;
  Multiset out = a;
  out.erase(out.begin() + (it - a.begin()));
  return out;
}

std::size_t ms_count(const Multiset& a, const Formula& f) {
  auto [lo, hi] = std::equal_range(a.begin(), a.end(), f);
  return static_cast<std::size_t>(hi - lo);
}

bool ms_contains(const Multiset& a, const Formula& f) { return std::binary_search(a.begin(), a.end(), f); }

bool ms_includes(const Multiset& a, const Multiset& b) { return std::includes(a.begin(), a.end(), b.begin(), b.end()); }

Multiset ms_nabla(const Multiset& a, int n) {
  Multiset out;
  out.reserve(a.size());
  for (const auto& f : a) out.push_back(nabla(f, n));
  return ms(std::move(out));
}

Multiset ms_box(const Multiset& a) {
  Multiset out;
  for (const auto& f : a) out.push_back(box(f));
  return ms(std::move(out));
}

Multiset ms_set(const Multiset& a) {
  Multiset out = a;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { Hash, Bang, Amp, Bar, Arrow, Heyt, LParen, RParen, Comma, Turnstile, Top, Bot, Ident, End };

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Hash: return "'#'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Heyt: return "'=>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Turnstile: return "'|-'";
    case Tok::Top: return "'T'";
    case Tok::Bot: return "'F'";
    case Tok::Ident: return "identifier";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const std::vector<std::string> starts = {"'#'", "'!'", "'('", "'T'", "'F'", "identifier"};
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    int l = line, cl = col;
    auto two = s.substr(i, 2);
    if (two == "|-") {
      out.push_back({Tok::Turnstile, two, l, cl});
      adv(2);
    } else if (two == "->") {
      out.push_back({Tok::Arrow, two, l, cl});
      adv(2);
    } else if (two == "=>") {
      out.push_back({Tok::Heyt, two, l, cl});
      adv(2);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string w = s.substr(i, j - i);
      if (w == "T") {
        out.push_back({Tok::Top, w, l, cl});
      } else if (w == "F") {
        out.push_back({Tok::Bot, w, l, cl});
      } else if (valid_atom_name(w)) {
        out.push_back({Tok::Ident, w, l, cl});
      } else {
        throw SyntaxError(l, cl, starts, "'" + w + "'");
      }
      adv(j - i);
    } else {
      Tok k;
      switch (c) {
        case '#': k = Tok::Hash; break;
        case '!': k = Tok::Bang; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Bar; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        default: {
          std::vector<std::string> all = {"'#'", "'!'", "'&'", "'|'", "'->'", "'=>'", "'('", "')'", "','",
                                          "'|-'", "'T'", "'F'", "identifier"};
          throw SyntaxError(l, cl, all, std::string("'") + c + "'");
        }
      }
      out.push_back({k, std::string(1, c), l, cl});
      adv(1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(lex(s)) {}

  Formula whole_formula() {
    Formula f = formula();
    expect_end({"'&'", "'|'", "'->'", "'=>'"});
    return f;
  }

  Sequent whole_sequent() {
    std::vector<Formula> ant;
    if (peek() != Tok::Turnstile) {
      ant.push_back(formula());
      while (peek() == Tok::Comma) {
        next();
        ant.push_back(formula());
      }
    }
    if (peek() != Tok::Turnstile) fail({"','", "'|-'", "'&'", "'|'", "'->'", "'=>'"});
    next();
    std::optional<Formula> suc;
    if (peek() != Tok::End) {
      suc = formula();
      if (peek() == Tok::Comma) throw InputError("more than one succedent formula at " + pos());
    }
    expect_end({"'&'", "'|'", "'->'", "'=>'"});
    return Sequent(std::move(ant), std::move(suc));
  }

 private:
  Tok peek() const { return toks_[i_].kind; }
  const Token& next() { return toks_[i_++]; }
  std::string pos() const { return std::to_string(toks_[i_].line) + ":" + std::to_string(toks_[i_].col); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = toks_[i_];
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, std::move(expected), found);
  }

  void expect_end(std::vector<std::string> more) {
    if (peek() == Tok::End) return;
    more.push_back(tok_name(Tok::End));
    fail(std::move(more));
  }

  Formula formula() {
    Formula l = disjunction();
    if (peek() == Tok::Arrow) {
      next();
      return dimp(l, formula());
    }
    if (peek() == Tok::Heyt) {
      next();
      return himp(l, formula());
    }
    return l;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek() == Tok::Bar) {
      next();
      f = disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek() == Tok::Amp) {
      next();
      f = conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek()) {
      case Tok::Hash:
        next();
        return nabla(unary());
      case Tok::Bang:
        next();
        return box(unary());
      case Tok::Top:
        next();
        return top();
      case Tok::Bot:
        next();
        return bot();
      case Tok::Ident:
        return atom(next().text);
      case Tok::LParen: {
        next();
        Formula f = formula();
        if (peek() != Tok::RParen) fail({"')'", "'&'", "'|'", "'->'", "'=>'"});
        next();
        return f;
      }
      default:
        fail({"'#'", "'!'", "'('", "'T'", "'F'", "identifier"});
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).whole_formula(); }
Sequent parse_sequent(const std::string& text) { return Parser(text).whole_sequent(); }

// ---------------------------------------------------------------- measures

int rank(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return 1;
    case Op::Nabla:
      return rank(f.body());
    default:
      return std::max(rank(f.lhs()), rank(f.rhs())) + 1;
  }
}

namespace {
void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is(Op::Atom)) {
    out.insert(f.name());
  } else if (f.is(Op::Nabla)) {
    collect_atoms(f.body(), out);
  } else if (f.binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}
}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<std::string> atoms(const Multiset& g) {
  std::set<std::string> out;
  for (const auto& f : g) collect_atoms(f, out);
  return out;
}

std::set<std::string> atoms(const Sequent& s) {
  auto out = atoms(s.ant);
  if (s.suc) collect_atoms(*s.suc, out);
  return out;
}

NablaPrefix strip_nabla(const Formula& f) {
  NablaPrefix p{0, f};
  while (p.core.is(Op::Nabla)) {
    p.core = p.core.body();
    ++p.depth;
  }
  return p;
}

std::vector<Formula> variants_up_to(const Formula& f, int d) {
  std::set<Formula> seen{f};
  std::vector<Formula> layer{f};
  for (int i = 0; i < d; ++i) {
    std::vector<Formula> nextl;
    for (const auto& g : layer) {
      for (Formula h : {nabla(g), box(g)}) {
        if (seen.insert(h).second) nextl.push_back(h);
      }
    }
    layer = std::move(nextl);
  }
  return {seen.begin(), seen.end()};
}

bool is_star(const Formula& f) {
  if (f.is(Op::Heyt)) return false;
  if (f.is(Op::Nabla)) return is_star(f.body());
  if (f.binary()) return is_star(f.lhs()) && is_star(f.rhs());
  return true;
}

bool is_star(const Sequent& s) {
  for (const auto& f : s.ant)
    if (!is_star(f)) return false;
  return !s.suc || is_star(*s.suc);
}

int max_nabla_depth(const Formula& f) {
  if (f.is(Op::Nabla)) return 1 + max_nabla_depth(f.body());
  if (f.binary()) return std::max(max_nabla_depth(f.lhs()), max_nabla_depth(f.rhs()));
  return 0;
}

int max_nabla_depth(const Sequent& s) {
  int m = s.suc ? max_nabla_depth(*s.suc) : 0;
  for (const auto& f : s.ant) m = std::max(m, max_nabla_depth(f));
  return m;
}

int formula_size(const Formula& f) {
  if (f.is(Op::Nabla)) return 1 + formula_size(f.body());
  if (f.binary()) return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
  return 1;
}

}  // namespace ikd
