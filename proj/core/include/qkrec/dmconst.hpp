#pragma once

#include <string>
#include <vector>

#include "qkrec/rational.hpp"

namespace qkrec {

/// Closed-form fixed-locus super-trace constants and the combinatorial
/// identities behind their dilaton-recursion derivation.
namespace dmconst {

/// (1/4) * 2^l * (l+1)!, l >= 0.
Rat constant_2a(int ell2);
/// Same closed form, defined for l >= 1 (the product starts at i = 2).
Rat constant_2c(int ell2);
/// r^l * l! for r in {3, 4, 6}.
Rat constant_cyclic(int r, int ell);

struct RecursionReport {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks, for all ell <= ell_max: the configuration count
/// sum_l' C(ell,l') l'! (ell-l')! = (ell+1)!, the redistribution identity
/// (ell+1)! = (ell+2)! - (ell+1)(ell+1)!, and the single-dilaton-step ratio
/// constant_2a(ell+1)/constant_2a(ell) = 2(ell+2).
RecursionReport verify_dilaton_recursion(int ell_max);

}  // namespace dmconst

}  // namespace qkrec
