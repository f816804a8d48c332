#include "qkrec/dmconst.hpp"

#include "qkrec/errors.hpp"

namespace qkrec::dmconst {

Rat constant_2a(int ell2) {
  if (ell2 < 0) throw EngineError(ErrorKind::invalid_argument, "constant_2a: ell2 >= 0");
  return Rat(1, 4) * rat_pow(Rat(2), ell2) * rat_factorial(ell2 + 1);
}

Rat constant_2c(int ell2) {
  if (ell2 < 1) throw EngineError(ErrorKind::invalid_argument, "constant_2c: ell2 >= 1");
  return Rat(1, 4) * rat_pow(Rat(2), ell2) * rat_factorial(ell2 + 1);
}

Rat constant_cyclic(int r, int ell) {
  if (r != 3 && r != 4 && r != 6) {
    throw EngineError(ErrorKind::invalid_argument, "constant_cyclic: r must be 3, 4 or 6");
  }
  if (ell < 0) throw EngineError(ErrorKind::invalid_argument, "constant_cyclic: ell >= 0");
  return rat_pow(Rat(r), ell) * rat_factorial(ell);
}

RecursionReport verify_dilaton_recursion(int ell_max) {
  if (ell_max < 2) throw EngineError(ErrorKind::invalid_argument, "ell_max >= 2");
  RecursionReport report;
  for (int ell = 0; ell <= ell_max; ++ell) {
    // (a) configuration count
    Rat lhs = 0;
    for (int k = 0; k <= ell; ++k) {
      lhs += rat_binomial(ell, k) * rat_factorial(k) * rat_factorial(ell - k);
    }
    ++report.checked;
    if (lhs != rat_factorial(ell + 1)) {
      report.failures.push_back("configuration count fails at ell=" + std::to_string(ell));
    }
    // (b) redistribution identity
    ++report.checked;
    if (rat_factorial(ell + 1) !=
        rat_factorial(ell + 2) - Rat(ell + 1) * rat_factorial(ell + 1)) {
      report.failures.push_back("redistribution identity fails at ell=" + std::to_string(ell));
    }
    // (c) one dilaton step on the 2a family
    ++report.checked;
    if (constant_2a(ell + 1) / constant_2a(ell) != Rat(2) * Rat(ell + 2)) {
      report.failures.push_back("dilaton step ratio fails at ell=" + std::to_string(ell));
    }
  }
  return report;
}

}  // namespace qkrec::dmconst
