#include "ikd/proof_json.hpp"

namespace ikd {

using nlohmann::json;

json proof_to_json(const Proof& t) {
  if (t->hypothesis) return json{{"hypothesis", t->seq.str()}};
  json j;
  j["sequent"] = t->seq.str();
  j["rule"] = rule_name(t->inst.rule);
  const auto& i = t->inst;
  if (i.n) j["n"] = *i.n;
  if (i.principal) j["principal"] = i.principal->str();
  if (i.intro) {
    json a = json::array();
    for (const auto& f : *i.intro) a.push_back(f.str());
    j["intro"] = a;
  }
  if (i.cut_formula) j["cut_formula"] = i.cut_formula->str();
  if (i.cut_exponent) j["cut_exponent"] = *i.cut_exponent;
  json ps = json::array();
  for (const auto& p : t->premises) ps.push_back(proof_to_json(p));
  j["premises"] = ps;
  return j;
}

namespace {

const std::string& need_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw InputError(std::string("proof node: field '") + key + "' must be a string");
  return it->get_ref<const std::string&>();
}

int need_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("proof node: field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Proof proof_from_json(const json& j) {
  if (!j.is_object()) throw InputError("proof node must be a JSON object");
  if (j.contains("hypothesis")) {
    if (j.size() != 1) throw InputError("hypothesis node takes no other fields");
    return hypothesis(parse_sequent(need_string(j, "hypothesis")));
  }
  static const std::set<std::string> known = {"sequent", "rule", "n", "principal", "intro", "cut_formula", "cut_exponent", "premises"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw InputError("proof node: unknown field '" + it.key() + "'");
  Sequent s = parse_sequent(need_string(j, "sequent"));
  const std::string& rn = need_string(j, "rule");
  auto rule = rule_from_name(rn);
  if (!rule) throw InputError("proof node: unknown rule '" + rn + "'");
  RuleInstance inst;
  inst.rule = *rule;
  if (j.contains("n")) inst.n = need_int(j, "n");
  if (j.contains("principal")) inst.principal = parse_formula(need_string(j, "principal"));
  if (j.contains("intro")) {
    const auto& a = j["intro"];
    if (!a.is_array()) throw InputError("proof node: intro must be an array");
    Multiset m;
    for (const auto& e : a) {
      if (!e.is_string()) throw InputError("proof node: intro entries must be strings");
      m.push_back(parse_formula(e.get<std::string>()));
    }
    inst.intro = ms(std::move(m));
  }
  if (j.contains("cut_formula")) inst.cut_formula = parse_formula(need_string(j, "cut_formula"));
  if (j.contains("cut_exponent")) inst.cut_exponent = need_int(j, "cut_exponent");
  std::vector<Proof> ps;
  if (j.contains("premises")) {
    const auto& a = j["premises"];
    if (!a.is_array()) throw InputError("proof node: premises must be an array");
    for (const auto& e : a) ps.push_back(proof_from_json(e));
  }
  return raw_node(std::move(s), std::move(inst), std::move(ps));
}

}  // namespace ikd
