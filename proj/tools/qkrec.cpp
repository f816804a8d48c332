#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkrec/suites.hpp"
#include "qkrec/tablegen.hpp"

using namespace qkrec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;

CorrelatorTable load_tables(const std::vector<std::string>& names) {
  if (names.empty()) {
    throw EngineError(ErrorKind::parse, "spec lists no correlator tables");
  }
  CorrelatorTable merged = CorrelatorTable::load_file(resolve_table_path(names[0]));
  for (size_t j = 1; j < names.size(); ++j) {
    CorrelatorTable extra = CorrelatorTable::load_file(resolve_table_path(names[j]));
    for (const auto& [key, entry] : extra.entries()) {
      merged.insert(key, entry.value, entry.provenance);
    }
  }
  return merged;
}

void emit(const std::string& text, const std::optional<std::string>& spec_output,
          const std::string& cli_output) {
  std::string path = !cli_output.empty() ? cli_output : spec_output.value_or("");
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EngineError(ErrorKind::parse, "cannot write output file: " + path);
  out << text << "\n";
}

json series_to_json(const Series& s) {
  json terms = json::array();
  for (const auto& [idx, c] : s.terms()) {
    json t;
    t["exponents"] = idx.exponents;
    if (idx.novikov != 0) t["novikov"] = idx.novikov;
    t["value"] = c.to_string();
    terms.push_back(t);
  }
  return terms;
}

json order_json(int order) {
  if (order == kInfiniteOrder) return "inf";
  return order;
}

int cmd_tau(const std::string& spec_path, const std::string& out_path) {
  RunSpec spec = RunSpec::load_file(spec_path);
  CorrelatorTable table = load_tables(spec.tables);
  PointBackend pb;
  Pipeline pipeline(spec.make_input(table.basis()), &table, &pb);
  const TauIterates& ti = pipeline.tau_iterates();

  json doc;
  doc["schema"] = "qkrec-tau-v1";
  doc["truncation_order"] = spec.truncation_order;
  doc["variables"] = spec.variables;
  doc["novikov"] = spec.novikov;
  doc["toggles"] = {{"y_sign", spec.toggles.y_sign_plus ? "plus" : "case2-minus"},
                    {"cycle_weight_in_brackets", spec.toggles.cycle_weight_in_brackets},
                    {"a_insertion", spec.toggles.a_insertion_level_r ? "level_r" : "level_1"}};
  doc["table_checksum"] = table.checksum();
  json iterates = json::array();
  for (const auto& step : ti.history) {
    json levels = json::array();
    for (int r = 1; r <= step.max_level(); ++r) levels.push_back(series_to_json(step.at(r).scalar()));
    iterates.push_back(levels);
  }
  doc["iterates"] = iterates;
  json final_tau = json::array();
  for (int r = 1; r <= ti.tau.max_level(); ++r) {
    final_tau.push_back(series_to_json(ti.tau.at(r).scalar()));
  }
  doc["tau"] = final_tau;
  json gaps = json::array();
  for (int g : ti.gap_orders) gaps.push_back(order_json(g));
  doc["gap_orders"] = gaps;
  json residuals = json::array();
  const int levels = std::max(3, pipeline.input().max_level());
  for (int r = 1; r <= levels; ++r) {
    const LaurentQ& tb = pipeline.tbar(r);
    residuals.push_back(order_json(tb.eval_at(Cyclo::one()).filtration_order()));
  }
  doc["tbar_residual_orders"] = residuals;
  pipeline.backend().throw_if_missing();
  emit(doc.dump(2), spec.output, out_path);
  return kExitOk;
}

int cmd_f1(const std::string& spec_path, const std::string& out_path) {
  RunSpec spec = RunSpec::load_file(spec_path);
  CorrelatorTable table = load_tables(spec.tables);
  PointBackend pb;
  Pipeline pipeline(spec.make_input(table.basis()), &table, &pb);
  ReconstructionReport report = pipeline.run_reconstruction();
  emit(report.to_json_string(), spec.output, out_path);
  return kExitOk;
}

int cmd_check(const std::string& suite, uint64_t seed, int order, const std::string& table_path) {
  CorrelatorTable table(BasisInfo::point());
  bool needs_table = suite == "contraction" || suite == "jacobian" || suite == "case2-residue";
  if (needs_table) {
    table = CorrelatorTable::load_file(resolve_table_path(table_path));
  }
  SuiteReport report = run_suite(suite, table, seed, order);
  if (report.ok()) {
    std::cout << "[PASS] " << report.name << ": " << report.instances << "/" << report.instances
              << " instances\n";
    return kExitOk;
  }
  std::cout << "[FAIL] " << report.name << ": " << (report.instances - static_cast<int>(report.failures.size()))
            << "/" << report.instances << " instances\n";
  for (const auto& f : report.failures) std::cout << "  " << f << "\n";
  return kExitFailure;
}

int cmd_table_validate(const std::string& path) {
  CorrelatorTable table = CorrelatorTable::load_file(resolve_table_path(path));
  ValidationReport report = table.validate();
  std::cout << "entries: " << table.size() << "\n";
  std::cout << "checksum: " << table.checksum() << "\n";
  std::cout << "string instances checked: " << report.string_instances << "\n";
  std::cout << "dilaton instances checked: " << report.dilaton_instances << "\n";
  if (report.ok()) {
    std::cout << "[PASS] table valid, zero violations\n";
    return kExitOk;
  }
  std::cout << "[FAIL] " << report.violations.size() << " violations\n";
  for (const auto& v : report.violations) std::cout << "  " << v << "\n";
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qkrec: genus-1 permutation-equivariant quantum K-invariant reconstruction"};
  app.require_subcommand(1);

  std::string spec_path, out_path;
  auto* tau_cmd = app.add_subcommand("tau", "compute the auxiliary point tau by fixed-point iteration");
  tau_cmd->add_option("--spec", spec_path, "run spec JSON file")->required();
  tau_cmd->add_option("--out", out_path, "output path (default: spec output or stdout)");

  auto* f1_cmd = app.add_subcommand("f1", "evaluate the full genus-1 reconstruction");
  f1_cmd->add_option("--spec", spec_path, "run spec JSON file")->required();
  f1_cmd->add_option("--out", out_path, "output path (default: spec output or stdout)");

  std::string suite;
  uint64_t seed = kDefaultSeed;
  int order = 0;
  std::string check_table = "point_table.json";
  auto* check_cmd = app.add_subcommand("check", "run an identity suite");
  check_cmd->add_option("suite", suite, "one of: string dilaton wdvv contraction jacobian residue dmconst case2-residue")
      ->required();
  check_cmd->add_option("--seed", seed, "random seed");
  check_cmd->add_option("--order", order, "instance count override");
  check_cmd->add_option("--table", check_table, "correlator table file");

  std::string table_file;
  auto* table_cmd = app.add_subcommand("table", "correlator table utilities");
  table_cmd->require_subcommand(1);
  auto* validate_cmd = table_cmd->add_subcommand("validate", "validate string/dilaton consistency");
  validate_cmd->add_option("file", table_file, "table JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tau_cmd->parsed()) return cmd_tau(spec_path, out_path);
    if (f1_cmd->parsed()) return cmd_f1(spec_path, out_path);
    if (check_cmd->parsed()) return cmd_check(suite, seed, order, check_table);
    if (table_cmd->parsed()) return cmd_table_validate(table_file);
  } catch (const EngineError& e) {
    std::cerr << "error [" << error_kind_name(e.kind) << "]: " << e.what() << "\n";
    return e.kind == ErrorKind::parse ? kExitParse : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
