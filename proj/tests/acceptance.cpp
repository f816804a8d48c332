// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (all exact) and prints one pass/fail line per criterion.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qkrec/dmconst.hpp"
#include "qkrec/suites.hpp"
#include "qkrec/tablegen.hpp"

using namespace qkrec;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(const std::string& name, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && seconds > limit_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("runtime limit exceeded");
  }
  std::ostringstream line;
  line << (ok ? "[PASS] " : "[FAIL] ") << name;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << seconds << "s)";
  if (!detail.empty()) line << " -- " << detail;
  std::cout << line.str() << std::endl;
  if (!ok) ++failures;
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool suite_ok(const SuiteReport& r, std::string& detail) {
  detail = std::to_string(r.instances - static_cast<int>(r.failures.size())) + "/" +
           std::to_string(r.instances) + " instances";
  if (!r.ok()) detail += "; first failure: " + r.failures.front();
  return r.ok();
}

}  // namespace

int main() {
  const std::string data = QKREC_DATA_DIR;
  CorrelatorTable table = CorrelatorTable::load_file(data + "/point_table.json");

  criterion("fixed-locus super-trace constants (closed forms, parameters <= 8)", 1.0, [&](std::string& d) {
    for (int ell = 0; ell <= 8; ++ell) {
      if (dmconst::constant_2a(ell) != Rat(1, 4) * rat_pow(Rat(2), ell) * rat_factorial(ell + 1))
        return false;
      if (ell >= 1 && dmconst::constant_2c(ell) != dmconst::constant_2a(ell)) return false;
      for (int r : {3, 4, 6}) {
        if (dmconst::constant_cyclic(r, ell) != rat_pow(Rat(r), ell) * rat_factorial(ell))
          return false;
      }
    }
    if (dmconst::constant_2a(1) != 1) return false;
    if (dmconst::constant_cyclic(3, 2) != 18) return false;
    d = "all families exact";
    return true;
  });

  criterion("string/dilaton suite (n <= 7, exponents [-3,3], 200 draws)", 60.0,
            [&](std::string& d) {
              SuiteReport s = suite_string(kDefaultSeed, 200);
              SuiteReport t = suite_dilaton(kDefaultSeed, 200);
              d = std::to_string(s.instances + t.instances) + " instances exact";
              if (!s.ok()) d = "string: " + s.failures.front();
              if (!t.ok()) d = "dilaton: " + t.failures.front();
              return s.ok() && t.ok();
            });

  criterion("WDVV identity (point target, tau_1 = eps, N = 2)", 120.0, [&](std::string& d) {
    return suite_ok(suite_wdvv(), d);
  });

  criterion("contraction/fixed point (20 random specs, N <= 3, r_max <= 3)", 120.0,
            [&](std::string& d) { return suite_ok(suite_contraction(table, kDefaultSeed, 20), d); });

  criterion("Prop 1.2 Jacobian identity (r in {1,2}, N <= 3)", 0, [&](std::string& d) {
    return suite_ok(suite_jacobian(table), d);
  });

  criterion("case-2 residue identity (assembled data, N = 2)", 0, [&](std::string& d) {
    SuiteReport bundled = suite_case2_residue(table);
    if (!bundled.ok()) {
      d = bundled.failures.front();
      return false;
    }
    // Also exercised with both sides nonzero on a period-2 model table.
    PointTableModel period2;
    period2.seed_level1_period2 = Rat(1, 2);
    CorrelatorTable synthetic = generate_point_table(period2);
    PointBackend pb;
    Pipeline p(case2_input(synthetic.basis()), &synthetic, &pb);
    RationalQ f = p.f1m(2);
    Series lhs = (f.residue_at(Cyclo::zero()) + f.residue_at_infinity()).scalar();
    Series rhs = f.subst_inverse_power(1).residue_at(-Cyclo::one()).scalar();
    p.backend().throw_if_missing();
    if (lhs != rhs) {
      d = "nonvacuous instance: sides differ";
      return false;
    }
    if (lhs.is_zero()) {
      d = "nonvacuous instance unexpectedly zero";
      return false;
    }
    d = "bundled table (0 = 0) and period-2 table (nonzero) both exact";
    return true;
  });

  criterion("global residue theorem (50 random rational functions)", 0, [&](std::string& d) {
    return suite_ok(suite_residue(kDefaultSeed, 50), d);
  });

  criterion("dilaton-recursion counting identities (ell <= 8)", 0, [&](std::string& d) {
    auto report = dmconst::verify_dilaton_recursion(8);
    d = std::to_string(report.checked) + " identities exact";
    if (!report.ok()) d = report.failures.front();
    return report.ok();
  });

  criterion("end-to-end determinism of the golden run", 0, [&](std::string& d) {
    PointBackend pb;
    RunSpec spec = golden_runspec("point_table.json");
    ReconstructionInput in = spec.make_input(table.basis());
    Pipeline p1(in, &table, &pb);
    std::string r1 = p1.run_reconstruction().to_json_string();
    Pipeline p2(in, &table, &pb);
    std::string r2 = p2.run_reconstruction().to_json_string();
    if (r1 != r2) {
      d = "repeated runs differ";
      return false;
    }
    std::string golden = read_file(data + "/golden_report.json");
    if (golden.empty()) {
      d = "golden_report.json missing";
      return false;
    }
    if (r1 + "\n" != golden) {
      d = "report differs from the stored golden file";
      return false;
    }
    // The CLI path must reproduce the same bytes.
    fs::path tmp = fs::temp_directory_path() / "qkrec-acceptance-golden.json";
    std::string cmd = std::string("QKREC_TABLE_PATH=") + data + " " + QKREC_CLI_PATH +
                      " f1 --spec " + data + "/golden_spec.json --out " + tmp.string();
    if (std::system(cmd.c_str()) != 0) {
      d = "qkrec f1 failed";
      return false;
    }
    if (read_file(tmp.string()) != golden) {
      d = "CLI output differs from the stored golden file";
      return false;
    }
    d = "in-process and CLI runs byte-identical to the stored golden report";
    return true;
  });

  criterion("bundled table passes validation with zero violations", 0, [&](std::string& d) {
    ValidationReport report = table.validate();
    d = std::to_string(report.string_instances) + " string + " +
        std::to_string(report.dilaton_instances) + " dilaton instances";
    if (!report.ok()) d = report.violations.front();
    return report.ok();
  });

  if (failures == 0) {
    std::cout << "acceptance: all criteria passed" << std::endl;
  } else {
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
