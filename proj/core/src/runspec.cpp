#include "qkrec/runspec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qkrec/errors.hpp"

namespace qkrec {

using nlohmann::json;

RunSpec RunSpec::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw EngineError(ErrorKind::parse,
                      std::string("spec JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != "qkrec-spec-v1") {
    throw EngineError(ErrorKind::parse, "spec schema must be qkrec-spec-v1");
  }
  RunSpec spec;
  spec.variables = doc.at("variables").get<std::vector<std::string>>();
  spec.truncation_order = doc.at("truncation_order").get<int>();
  spec.novikov = doc.value("novikov", false);
  for (const auto& ij : doc.value("inputs", json::array())) {
    SpecInput input;
    input.level = ij.at("level").get<int>();
    if (input.level < 1) throw EngineError(ErrorKind::parse, "input level must be >= 1");
    for (const auto& tj : ij.at("terms")) {
      SpecTerm term;
      term.exponent = tj.at("exponent").get<int>();
      const auto& cj = tj.at("coefficient");
      term.variable = cj.at("var").get<std::string>();
      if (cj.contains("scale")) term.scale = rat_from_string(cj.at("scale").get<std::string>());
      input.terms.push_back(std::move(term));
    }
    spec.inputs.push_back(std::move(input));
  }
  spec.tables = doc.value("tables", std::vector<std::string>{});
  if (doc.contains("toggles")) {
    const auto& tj = doc["toggles"];
    std::string y = tj.value("y_sign", "case2-minus");
    if (y != "case2-minus" && y != "plus") {
      throw EngineError(ErrorKind::parse, "toggles.y_sign must be 'case2-minus' or 'plus'");
    }
    spec.toggles.y_sign_plus = (y == "plus");
    spec.toggles.cycle_weight_in_brackets = tj.value("cycle_weight_in_brackets", true);
    std::string a = tj.value("a_insertion", "level_r");
    if (a != "level_r" && a != "level_1") {
      throw EngineError(ErrorKind::parse, "toggles.a_insertion must be 'level_r' or 'level_1'");
    }
    spec.toggles.a_insertion_level_r = (a == "level_r");
  }
  if (doc.contains("output")) spec.output = doc["output"].get<std::string>();
  return spec;
}

RunSpec RunSpec::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EngineError(ErrorKind::parse, "cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string RunSpec::to_json_string() const {
  json doc;
  doc["schema"] = "qkrec-spec-v1";
  doc["variables"] = variables;
  doc["truncation_order"] = truncation_order;
  doc["novikov"] = novikov;
  json inputs_json = json::array();
  for (const auto& input : inputs) {
    json terms = json::array();
    for (const auto& t : input.terms) {
      json cj = {{"var", t.variable}};
      if (t.scale != 1) cj["scale"] = rat_to_string(t.scale);
      terms.push_back({{"exponent", t.exponent}, {"coefficient", cj}});
    }
    inputs_json.push_back({{"level", input.level}, {"terms", terms}});
  }
  doc["inputs"] = inputs_json;
  doc["tables"] = tables;
  doc["toggles"] = {{"y_sign", toggles.y_sign_plus ? "plus" : "case2-minus"},
                    {"cycle_weight_in_brackets", toggles.cycle_weight_in_brackets},
                    {"a_insertion", toggles.a_insertion_level_r ? "level_r" : "level_1"}};
  if (output) doc["output"] = *output;
  return doc.dump(2);
}

ConfigPtr RunSpec::make_ring_config() const {
  return make_config(variables, truncation_order, novikov);
}

ReconstructionInput RunSpec::make_input(const BasisPtr& basis) const {
  ReconstructionInput in;
  in.basis = basis;
  in.config = make_ring_config();
  in.toggles = toggles;
  int max_level = 0;
  for (const auto& input : inputs) max_level = std::max(max_level, input.level);
  for (int r = 1; r <= max_level; ++r) in.t.emplace_back(basis, in.config);
  for (const auto& input : inputs) {
    LaurentQ& t = in.t[static_cast<size_t>(input.level - 1)];
    for (const auto& term : input.terms) {
      int vi = in.config->var_index(term.variable);
      if (vi < 0) {
        throw EngineError(ErrorKind::parse, "unknown variable in input: " + term.variable);
      }
      Series coeff = Series::variable(in.config, vi).scaled(Cyclo(term.scale));
      t.add_term(term.exponent, KVector::unit(basis, in.config).scaled(coeff));
    }
  }
  in.validate();
  return in;
}

}  // namespace qkrec
