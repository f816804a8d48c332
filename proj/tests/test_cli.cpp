#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qkrec/runspec.hpp"
#include "qkrec/suites.hpp"

using namespace qkrec;
namespace fs = std::filesystem;

namespace {

const std::string kCli = QKREC_CLI_PATH;
const std::string kData = QKREC_DATA_DIR;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "qkrec-cli-test";
  fs::create_directories(dir);
  fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = "QKREC_TABLE_PATH=" + kData + " " + kCli + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return RunResult{code, slurp(out), slurp(err)};
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "qkrec-cli-test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p.string();
}

}  // namespace

TEST_CASE("run spec round trip") {
  RunSpec spec = golden_runspec("point_table.json");
  spec.output = "report.json";
  RunSpec again = RunSpec::from_json(spec.to_json_string());
  CHECK(again.to_json_string() == spec.to_json_string());
  CHECK(again.variables == spec.variables);
  CHECK(again.truncation_order == spec.truncation_order);
  CHECK(again.tables == spec.tables);
  CHECK(again.toggles == spec.toggles);
  CHECK(again.output == spec.output);

  CHECK_THROWS_AS(RunSpec::from_json("{\"schema\":\"qkrec-spec-v1\""), EngineError);
  CHECK_THROWS_AS(RunSpec::from_json("{\"schema\":\"other\"}"), EngineError);
}

TEST_CASE("cli: f1 reproduces the golden report byte for byte") {
  std::string out1 = write_temp("golden1.json", "");
  std::string out2 = write_temp("golden2.json", "");
  RunResult r1 = run_cli("f1 --spec " + kData + "/golden_spec.json --out " + out1);
  REQUIRE(r1.exit_code == 0);
  RunResult r2 = run_cli("f1 --spec " + kData + "/golden_spec.json --out " + out2);
  REQUIRE(r2.exit_code == 0);
  std::string a = read_file(out1), b = read_file(out2);
  CHECK(a == b);
  CHECK(a == read_file(kData + "/golden_report.json"));
}

TEST_CASE("cli: tau reports iterates and residual orders") {
  RunResult r = run_cli("tau --spec " + kData + "/golden_spec.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("qkrec-tau-v1") != std::string::npos);
  CHECK(r.out.find("tbar_residual_orders") != std::string::npos);
  CHECK(r.out.find("inf") != std::string::npos);
}

TEST_CASE("cli: malformed spec exits 2 with a parse diagnostic") {
  std::string bad = write_temp("bad.json", "{\"schema\": \"qkrec-spec-v1\",\n  broken\n}");
  RunResult r = run_cli("f1 --spec " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("parse") != std::string::npos);
  // nlohmann diagnostics carry line/column positions.
  CHECK(r.err.find("line") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);
}

TEST_CASE("cli: check suites") {
  CHECK(run_cli("check dmconst").exit_code == 0);
  CHECK(run_cli("check residue --order 10").exit_code == 0);
  RunResult r = run_cli("check case2-residue --table point_table.json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  CHECK(run_cli("check nonsense").exit_code != 0);
}

TEST_CASE("cli: table validate") {
  RunResult r = run_cli("table validate point_table.json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("zero violations") != std::string::npos);
  CHECK(r.out.find("checksum") != std::string::npos);

  std::string bad_table = write_temp("bad_table.json", R"({
    "schema": "qkrec-table-v1",
    "target": {"rank": 1, "pairing": [[1]]},
    "entries": [
      {"genus": 0, "cycle_type": [3], "degree": 0,
       "slots": [{"r":1,"exponent":0},{"r":1,"exponent":0},{"r":1,"exponent":0}],
       "value": "1", "provenance": "t"},
      {"genus": 0, "cycle_type": [4], "degree": 0,
       "slots": [{"r":1,"exponent":0},{"r":1,"exponent":0},{"r":1,"exponent":0},{"r":1,"exponent":0}],
       "value": "5", "provenance": "t"}
    ]})");
  RunResult rb = run_cli("table validate " + bad_table);
  CHECK(rb.exit_code == 1);
  CHECK(rb.out.find("string equation violated") != std::string::npos);
}

TEST_CASE("cli: zero-input spec gives the zero report") {
  std::string spec = write_temp("zero_spec.json", R"({
    "schema": "qkrec-spec-v1",
    "variables": ["eps"],
    "truncation_order": 2,
    "inputs": [],
    "tables": ["point_table.json"]})");
  RunResult rt = run_cli("tau --spec " + spec);
  CHECK(rt.exit_code == 0);
  CHECK(rt.out.find("\"tau\": []") != std::string::npos);
  RunResult rf = run_cli("f1 --spec " + spec);
  CHECK(rf.exit_code == 0);
  CHECK(rf.out.find("\"total\": []") != std::string::npos);
}

TEST_CASE("cli: later tables override earlier ones") {
  // A second table that overwrites the genus-1 one-point seed changes the
  // report but must load and merge cleanly.
  std::string extra = write_temp("override_table.json", R"({
    "schema": "qkrec-table-v1",
    "target": {"rank": 1, "pairing": [[1]]},
    "entries": [
      {"genus": 1, "cycle_type": [1], "degree": 0,
       "slots": [{"r":1,"exponent":0,"basis":0}],
       "value": "2", "provenance": "override"}
    ]})");
  RunSpec spec = golden_runspec("point_table.json");
  spec.tables.push_back(extra);
  std::string spec_path = write_temp("merged_spec.json", spec.to_json_string());
  RunResult r = run_cli("f1 --spec " + spec_path);
  CHECK(r.exit_code == 0);  // golden inputs never query the overridden key
}

TEST_CASE("cli: missing tables and missing keys fail cleanly") {
  RunResult r = run_cli("f1 --spec " + kData + "/golden_spec.json --out /dev/null");
  CHECK(r.exit_code == 0);

  std::string empty_table = write_temp("empty_table.json", R"({
    "schema": "qkrec-table-v1",
    "target": {"rank": 1, "pairing": [[1]]},
    "entries": []})");
  RunSpec spec = golden_runspec(empty_table);
  std::string spec_path = write_temp("empty_spec.json", spec.to_json_string());
  RunResult rm = run_cli("f1 --spec " + spec_path);
  CHECK(rm.exit_code == 1);
  CHECK(rm.err.find("missing") != std::string::npos);
  CHECK(rm.err.find("g=1") != std::string::npos);

  RunSpec gone = golden_runspec("no_such_table.json");
  std::string gone_path = write_temp("gone_spec.json", gone.to_json_string());
  CHECK(run_cli("f1 --spec " + gone_path).exit_code == 2);
}
