#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "ikd/algebra.hpp"
#include "ikd/kernel.hpp"
#include "ikd/meta.hpp"
#include "ikd/proof_json.hpp"
#include "ikd/render.hpp"
#include "ikd/search.hpp"
#include "ikd/syntax.hpp"
#include "ikd/transform.hpp"

using nlohmann::json;
using namespace ikd;

namespace {

enum Exit { Ok = 0, NotFound = 1, BadInput = 2, Internal = 3 };

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

Calculus calculus_named(const std::string& name) {
  if (name == "ikd") return Calculus::of(Base::IKD);
  if (name == "ikds") return Calculus::of(Base::IKDS);
  if (name == "stl" || name == "stlnh") return Calculus::of(Base::STLNH);
  if (name == "stln") return Calculus::of(Base::STLN);
  throw InputError("unknown calculus '" + name + "' (expected ikd, ikds, stlnh or stln)");
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

// Accepts a bare proof or any report carrying one under "proof".
Proof load_proof(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("proof")) j = j["proof"];
  return proof_from_json(j);
}

void require_valid(const Proof& t, const Calculus& c) {
  if (auto f = check_proof(t, c))
    throw InputError(std::string("the proof does not check in ") + base_name(c.base) + " " + f->describe());
}

json report_json(const SearchReport& r) {
  return {{"expansions", r.expansions},     {"loop_prunes", r.loop_prunes},       {"excess_prunes", r.excess_prunes},
          {"depth_cutoffs", r.depth_cutoffs}, {"depth_reached", r.depth_reached}, {"budget_hit", r.budget_hit}};
}

json formulas_json(const Multiset& m) {
  json a = json::array();
  for (const auto& f : m) a.push_back(f.str());
  return a;
}

struct BudgetFlags {
  std::optional<int> depth, excess;
  std::optional<long> nodes;

  void add(CLI::App* c) {
    c->add_option("--depth", depth, "maximum proof depth");
    c->add_option("--excess", excess, "maximum nabla depth beyond the goal");
    c->add_option("--nodes", nodes, "maximum number of expansions");
  }
  SearchBudget get() const {
    SearchBudget b = default_budget();
    if (depth) b.max_depth = *depth;
    if (excess) b.max_nabla_excess = *excess;
    if (nodes) b.max_nodes = *nodes;
    return b;
  }
};

// Proof either from --proof or by searching the sequent; nullopt when the search fails.
struct Source {
  std::string sequent, proof_path;

  void add(CLI::App* c) {
    c->add_option("sequent", sequent, "sequent to prove first");
    c->add_option("--proof", proof_path, "proof JSON file, '-' for stdin");
  }
  std::optional<Proof> get(const Calculus& calc, const SearchBudget& b, json& out) const {
    if (sequent.empty() == proof_path.empty()) throw InputError("give either a sequent or --proof");
    if (!proof_path.empty()) {
      Proof t = load_proof(proof_path);
      require_valid(t, calc);
      return t;
    }
    auto found = prove(parse_sequent(sequent), Calculus::of(calc.base), b);
    out["search"] = report_json(found.report);
    if (found.proof) require_checks(*found.proof, calc, "prove");
    return found.proof;
  }
};

std::vector<bool> parse_split(const std::string& text, std::size_t n) {
  std::vector<bool> left(n, false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long i = -1;
    try {
      i = std::stol(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || i < 0 || i >= static_cast<long>(n))
      throw InputError("bad antecedent index '" + item + "' (the antecedent has " + std::to_string(n) + " formulas)");
    if (left[i]) throw InputError("index " + item + " repeated");
    left[i] = true;
  }
  return left;
}

VisserAntecedent parts_of(const Multiset& ant) {
  VisserAntecedent x;
  for (const auto& f : ant) {
    auto [n, core] = strip_nabla(f);
    if (core.is(Op::Heyt)) x.heyting_parts.push_back({n, core.lhs(), core.rhs()});
    else if (core.is(Op::Dyn)) x.dyn_parts.push_back({n, core.lhs(), core.rhs()});
    else throw InputError("'" + f.str() + "' is neither #^m(A => B) nor #^n(C -> D)");
  }
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof kernel, search and proof transformations for iK_d, iK_d* and STL(N,H), STL(N)"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string calc_name = "ikd";
  app.add_option("--calc", calc_name, "ikd, ikds, stlnh or stln")->capture_default_str();
  BudgetFlags budget;
  std::function<int()> run;

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula or sequent and print it in normal form");
  std::string parse_text;
  parse_cmd->add_option("text", parse_text)->required();
  parse_cmd->callback([&] {
    run = [&] {
      json out;
      if (parse_text.find("|-") != std::string::npos) {
        Sequent s = parse_sequent(parse_text);
        out = {{"kind", "sequent"}, {"text", s.str()}, {"antecedent", formulas_json(s.ant)}};
        out["succedent"] = s.suc ? json(s.suc->str()) : json(nullptr);
      } else {
        Formula f = parse_formula(parse_text);
        out = {{"kind", "formula"}, {"text", f.str()}, {"rank", rank(f)}, {"size", formula_size(f)}};
      }
      emit(out);
      return Ok;
    };
  });

  auto* prove_cmd = app.add_subcommand("prove", "search for a cut-free proof");
  std::string prove_text;
  prove_cmd->add_option("sequent", prove_text)->required();
  budget.add(prove_cmd);
  prove_cmd->callback([&] {
    run = [&] {
      Calculus c = calculus_named(calc_name);
      Sequent goal = parse_sequent(prove_text);
      auto found = prove(goal, c, budget.get());
      json out = {{"sequent", goal.str()}, {"calculus", base_name(c.base)}, {"report", report_json(found.report)}};
      if (!found.proof) {
        out["status"] = "exhausted";
        emit(out);
        return NotFound;
      }
      if (auto f = check_proof(*found.proof, c)) {
        std::cerr << "search returned a proof that does not check " << f->describe() << "\n";
        return Internal;
      }
      out["status"] = "found";
      out["proof"] = proof_to_json(*found.proof);
      emit(out);
      return Ok;
    };
  });

  auto* check_cmd = app.add_subcommand("check", "check a proof file");
  std::string check_path;
  bool check_cut = false, check_hyp = false;
  check_cmd->add_option("proof", check_path, "proof JSON file, '-' for stdin")->required();
  check_cmd->add_flag("--cut", check_cut, "allow cut");
  check_cmd->add_flag("--hyp", check_hyp, "allow hypothesis leaves");
  check_cmd->callback([&] {
    run = [&] {
      Calculus c = calculus_named(calc_name).with_cut(check_cut).with_hypotheses(check_hyp);
      Proof t = load_proof(check_path);
      json out = {{"sequent", t->seq.str()}, {"calculus", base_name(c.base)}};
      if (auto f = check_proof(t, c)) {
        out["status"] = "invalid";
        out["path"] = f->path;
        out["violation"] = f->violation;
        emit(out);
        return NotFound;
      }
      out["status"] = "valid";
      out["height"] = t->height;
      out["size"] = t->size;
      emit(out);
      return Ok;
    };
  });

  auto* tr_cmd = app.add_subcommand("translate", "translate between STL and iK_d proofs");
  std::string tr_to, tr_path;
  tr_cmd->add_option("--to", tr_to, "ikd or stl")->required()->check(CLI::IsMember({"ikd", "stl"}));
  tr_cmd->add_option("proof", tr_path, "proof JSON file, '-' for stdin")->required();
  tr_cmd->callback([&] {
    run = [&] {
      Proof t = load_proof(tr_path);
      json out;
      if (tr_to == "ikd") {
        Calculus src = calc_name == "ikd" ? Calculus::of(Base::STLNH) : calculus_named(calc_name);
        if (!src.stl()) throw InputError("translate --to ikd needs an STL source calculus");
        require_valid(t, src.with_cut());
        Proof r = stl_to_ikd(t, src);
        out = {{"from", base_name(src.base)}, {"to", base_name(translation_target(src).base)}, {"proof", proof_to_json(r)}};
      } else {
        Calculus src = calculus_named(calc_name);
        if (src.stl()) throw InputError("translate --to stl needs an iK_d source calculus");
        require_valid(t, src);
        Proof r = ikd_to_stl(t, src);
        out = {{"from", base_name(src.base)}, {"to", base_name(translation_target(src).base)}, {"proof", proof_to_json(r)}};
      }
      out["sequent"] = t->seq.str();
      emit(out);
      return Ok;
    };
  });

  auto* ce_cmd = app.add_subcommand("cutelim", "eliminate generalized cuts from an iK_d proof");
  std::string ce_path, ce_strategy = "left";
  ce_cmd->add_option("proof", ce_path, "proof JSON file, '-' for stdin")->required();
  ce_cmd->add_option("--strategy", ce_strategy, "left or right")->check(CLI::IsMember({"left", "right"}));
  ce_cmd->callback([&] {
    run = [&] {
      Proof t = load_proof(ce_path);
      Proof r = eliminate_cuts(t, ce_strategy == "left" ? CutStrategy::LeftFirst : CutStrategy::RightFirst);
      emit({{"sequent", r->seq.str()},
            {"height_before", t->height},
            {"height_after", r->height},
            {"size_after", r->size},
            {"proof", proof_to_json(r)}});
      return Ok;
    };
  });

  auto* ip_cmd = app.add_subcommand("interpolate", "Maehara interpolation for a split antecedent");
  Source ip_src;
  std::string ip_left;
  ip_src.add(ip_cmd);
  ip_cmd->add_option("--left", ip_left, "comma-separated antecedent indices (normal-form order) forming Gamma1")->required();
  budget.add(ip_cmd);
  ip_cmd->callback([&] {
    run = [&] {
      json out;
      Calculus c = calculus_named(calc_name);
      if (c.base != Base::IKD) throw InputError("interpolation works in ikd only");
      auto t = ip_src.get(c, budget.get(), out);
      if (!t) {
        out["status"] = "exhausted";
        emit(out);
        return NotFound;
      }
      auto r = interpolate(*t, parse_split(ip_left, (*t)->seq.ant.size()));
      Multiset g1 = r.left_proof->seq.ant, g2 = *ms_remove(r.right_proof->seq.ant, r.interpolant);
      out.update(json{{"status", "found"},
                      {"sequent", (*t)->seq.str()},
                      {"interpolant", r.interpolant.str()},
                      {"gamma1", formulas_json(g1)},
                      {"gamma2", formulas_json(g2)},
                      {"trace", r.trace},
                      {"left_proof", proof_to_json(r.left_proof)},
                      {"right_proof", proof_to_json(r.right_proof)}});
      emit(out);
      return Ok;
    };
  });

  auto* vs_cmd = app.add_subcommand("visser", "Visser-rule extraction; antecedent parts are read off the sequent");
  Source vs_src;
  std::string vs_mode;
  int vs_k = 0;
  vs_src.add(vs_cmd);
  vs_cmd->add_option("--mode", vs_mode, "disj, imp or heyt")->required()->check(CLI::IsMember({"disj", "imp", "heyt"}));
  vs_cmd->add_option("--k", vs_k, "nabla depth of the goal implication")->check(CLI::NonNegativeNumber);
  budget.add(vs_cmd);
  vs_cmd->callback([&] {
    run = [&] {
      json out;
      Calculus c = calculus_named(calc_name);
      if (c.stl()) throw InputError("visser works in ikd or ikds");
      auto t = vs_src.get(c, budget.get(), out);
      if (!t) {
        out["status"] = "exhausted";
        emit(out);
        return NotFound;
      }
      VisserMode mode = vs_mode == "disj" ? VisserMode::Disjunctive : vs_mode == "imp" ? VisserMode::Implicative : VisserMode::Heyting;
      VisserAntecedent x = parts_of((*t)->seq.ant);
      VisserVerdict v = c.star()                             ? visser_star(*t, x, mode, vs_k)
                        : mode == VisserMode::Disjunctive ? visser_disjunctive(*t, x)
                        : mode == VisserMode::Implicative ? visser_implicative(*t, x, vs_k)
                                                          : visser_heyting(*t, x, vs_k);
      json hp = json::array(), dp = json::array();
      for (const auto& h : x.heyting_parts) hp.push_back(h.formula().str());
      for (const auto& d : x.dyn_parts) dp.push_back(d.formula().str());
      out.update(json{{"status", "found"},
                      {"family", vs_mode},
                      {"k", vs_k},
                      {"heyting_parts", hp},
                      {"dyn_parts", dp},
                      {"verdict", verdict_kind_name(v.kind)},
                      {"sequent", v.proof->seq.str()},
                      {"proof", proof_to_json(v.proof)}});
      if (v.index >= 0) out["index"] = v.index;
      if (v.kind == VisserVerdict::Kind::Residual) {
        out["heyting_kept"] = v.heyting_kept;
        out["dyn_kept"] = v.dyn_kept;
      }
      emit(out);
      return Ok;
    };
  });

  auto* sd_cmd = app.add_subcommand("split-disjunction", "disjunction property: a proof of one disjunct");
  Source sd_src;
  sd_src.add(sd_cmd);
  budget.add(sd_cmd);
  sd_cmd->callback([&] {
    run = [&] {
      json out;
      Calculus c = calculus_named(calc_name);
      if (c.stl()) throw InputError("split-disjunction works in ikd or ikds");
      auto t = sd_src.get(c, budget.get(), out);
      if (!t) {
        out["status"] = "exhausted";
        emit(out);
        return NotFound;
      }
      auto s = split_disjunction(*t);
      out.update(json{{"status", "found"},
                      {"side", s.left ? "left" : "right"},
                      {"sequent", s.proof->seq.str()},
                      {"proof", proof_to_json(s.proof)}});
      emit(out);
      return Ok;
    };
  });

  auto* dd_cmd = app.add_subcommand("deduce", "deduction theorem for hypotheses |- A");
  dd_cmd->require_subcommand(1);
  std::string dd_hyp, dd_sigma, dd_path;
  auto* dd_export = dd_cmd->add_subcommand("export", "hypothesis proof to a cut-free proof with side formulas");
  auto* dd_import = dd_cmd->add_subcommand("import", "proof with side formulas back to a hypothesis proof");
  for (auto* c : {dd_export, dd_import}) {
    c->add_option("--hyp", dd_hyp, "the hypothesis formula A")->required();
    c->add_option("proof", dd_path, "proof JSON file, '-' for stdin")->required();
  }
  dd_import->add_option("--sigma", dd_sigma, "comma-separated variants of A to discharge")->required();
  dd_export->callback([&] {
    run = [&] {
      auto r = deduction_export(load_proof(dd_path), parse_formula(dd_hyp));
      emit({{"sigma", formulas_json(r.sigma)}, {"sequent", r.proof->seq.str()}, {"proof", proof_to_json(r.proof)}});
      return Ok;
    };
  });
  dd_import->callback([&] {
    run = [&] {
      Multiset sigma = parse_sequent(dd_sigma + " |-").ant;
      Proof r = deduction_import(parse_formula(dd_hyp), sigma, load_proof(dd_path));
      emit({{"sequent", r->seq.str()}, {"proof", proof_to_json(r)}});
      return Ok;
    };
  });

  auto* rf_cmd = app.add_subcommand("refute", "search finite normal Heyting nabla-algebras for a countermodel");
  std::string rf_text;
  int rf_max = 4;
  rf_cmd->add_option("sequent", rf_text)->required();
  rf_cmd->add_option("--max-size", rf_max, "largest carrier size")->check(CLI::Range(1, kMaxAlgebraSize));
  rf_cmd->callback([&] {
    run = [&] {
      Sequent s = parse_sequent(rf_text);
      auto cm = refute(s, rf_max, true);
      if (!cm) {
        emit({{"status", "not_found_within_bound"}, {"sequent", s.str()}, {"max_size", rf_max}});
        return NotFound;
      }
      if (holds(s, cm->algebra, cm->valuation)) {
        std::cerr << "countermodel does not refute the sequent\n";
        return Internal;
      }
      json out = countermodel_to_json(*cm);
      out["status"] = "refuted";
      emit(out);
      return Ok;
    };
  });

  auto* rd_cmd = app.add_subcommand("render", "draw a proof as an indented tree or a LaTeX document");
  Source rd_src;
  std::string rd_format = "ascii";
  rd_src.add(rd_cmd);
  rd_cmd->add_option("--format", rd_format, "ascii or latex")->check(CLI::IsMember({"ascii", "latex"}));
  budget.add(rd_cmd);
  rd_cmd->callback([&] {
    run = [&] {
      json out;
      Calculus c = calculus_named(calc_name).with_cut().with_hypotheses();
      auto t = rd_src.get(c, budget.get(), out);
      if (!t) {
        std::cerr << "no proof found\n";
        return NotFound;
      }
      std::cout << (rd_format == "ascii" ? render_ascii(*t) : render_latex(*t));
      return Ok;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BadInput;
  }
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return BadInput;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  }
}
