#include "ikd/render.hpp"

namespace ikd {

namespace {

std::string with_n(const char* base, const RuleInstance& in) { return std::string(base) + "^" + std::to_string(in.exponent()); }

int level(const Formula& f) {
  switch (f.op()) {
    case Op::Dyn:
    case Op::Heyt: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    default: return 4;
  }
}

std::string wrap(const Formula& f, int need) {
  std::string s = formula_latex(f);
  return level(f) < need ? "(" + s + ")" : s;
}

std::string latex_label(const ProofNode& node) {
  const RuleInstance& in = node.inst;
  auto sup = [&](const std::string& base) { return base + "^{" + std::to_string(in.exponent()) + "}"; };
  if (node.hypothesis) return "";
  switch (in.rule) {
    case Rule::IdP: return "Id^p";
    case Rule::Id: return "Id";
    case Rule::LBot: return "L\\bot";
    case Rule::RTop: return "R\\top";
    case Rule::LW: return "LW";
    case Rule::Lw: return "Lw";
    case Rule::Rw: return "Rw";
    case Rule::LAndN: return sup("L\\wedge");
    case Rule::RAnd: return "R\\wedge";
    case Rule::LOrN: return sup("L\\vee");
    case Rule::ROr1: return "R\\vee_1";
    case Rule::ROr2: return "R\\vee_2";
    case Rule::LDynImpN: return sup("L\\!\\rightarrow");
    case Rule::RDynImp: return "R\\!\\rightarrow";
    case Rule::LHeytImpN: return sup("L\\!\\supset");
    case Rule::RHeytImp: return "R\\!\\supset";
    case Rule::N: return "N";
    case Rule::Lc: return "Lc";
    case Rule::Cut: return in.cut_n() ? "Cut^{" + std::to_string(in.cut_n()) + "}" : "Cut";
    case Rule::LAnd1: return "L\\wedge_1";
    case Rule::LAnd2: return "L\\wedge_2";
    case Rule::LOr: return "L\\vee";
    case Rule::LDynImp: return "L\\!\\rightarrow";
    case Rule::LHeytImp: return "L\\!\\supset";
  }
  return "";
}

void ascii(const Proof& t, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + t->seq.str() + "   [" + rule_label(*t) + "]\n";
  for (const auto& p : t->premises) ascii(p, depth + 1, out);
}

void latex(const Proof& t, std::string& out) {
  const std::string seq = "$" + sequent_latex(t->seq) + "$";
  if (t->hypothesis) {
    out += "\\AxiomC{" + seq + "}\n";
    return;
  }
  if (t->premises.empty()) out += "\\AxiomC{}\n";
  for (const auto& p : t->premises) latex(p, out);
  out += "\\RightLabel{\\scriptsize $" + latex_label(*t) + "$}\n";
  out += (t->premises.size() == 2 ? "\\BinaryInfC{" : "\\UnaryInfC{") + seq + "}\n";
}

}  // namespace

std::string rule_label(const ProofNode& node) {
  const RuleInstance& in = node.inst;
  if (node.hypothesis) return "Hyp";
  switch (in.rule) {
    case Rule::IdP: return "Id^p";
    case Rule::LBot: return "LF";
    case Rule::RTop: return "RT";
    case Rule::LAndN: return with_n("L&", in);
    case Rule::RAnd: return "R&";
    case Rule::LOrN: return with_n("L|", in);
    case Rule::ROr1: return "R|1";
    case Rule::ROr2: return "R|2";
    case Rule::LDynImpN: return with_n("L->", in);
    case Rule::RDynImp: return "R->";
    case Rule::LHeytImpN: return with_n("L=>", in);
    case Rule::RHeytImp: return "R=>";
    case Rule::Cut: return in.cut_n() ? "Cut^" + std::to_string(in.cut_n()) : "Cut";
    case Rule::LAnd1: return "L&1";
    case Rule::LAnd2: return "L&2";
    case Rule::LOr: return "L|";
    case Rule::LDynImp: return "L->";
    case Rule::LHeytImp: return "L=>";
    default: return rule_name(in.rule);
  }
}

std::string render_ascii(const Proof& t) {
  std::string out;
  ascii(t, 0, out);
  return out;
}

std::string formula_latex(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return f.name().size() == 1 ? f.name() : "\\mathit{" + f.name() + "}";
    case Op::Top: return "\\top";
    case Op::Bot: return "\\bot";
    case Op::Nabla: return "\\nabla " + wrap(f.body(), 4);
    case Op::And: return wrap(f.lhs(), 3) + " \\wedge " + wrap(f.rhs(), 4);
    case Op::Or: return wrap(f.lhs(), 2) + " \\vee " + wrap(f.rhs(), 3);
    case Op::Dyn: return wrap(f.lhs(), 2) + " \\rightarrow " + wrap(f.rhs(), 1);
    case Op::Heyt: return wrap(f.lhs(), 2) + " \\supset " + wrap(f.rhs(), 1);
  }
  return "";
}

std::string sequent_latex(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.ant.size(); ++i) out += (i ? ", " : "") + formula_latex(s.ant[i]);
  out += out.empty() ? "\\Rightarrow" : " \\Rightarrow";
  if (s.suc) out += " " + formula_latex(*s.suc);
  return out;
}

std::string render_latex(const Proof& t) {
  std::string out =
      "\\documentclass{article}\n\\usepackage{amssymb}\n\\usepackage{bussproofs}\n\\pagestyle{empty}\n"
      "\\begin{document}\n\\begin{prooftree}\n";
  latex(t, out);
  out += "\\end{prooftree}\n\\end{document}\n";
  return out;
}

}  // namespace ikd
