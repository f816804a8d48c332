#include <doctest.h>

#include "qkrec/dmconst.hpp"
#include "qkrec/errors.hpp"

using namespace qkrec;

TEST_CASE("fixed-locus constants: printed values") {
  CHECK(dmconst::constant_2a(0) == Rat(1, 4));
  CHECK(dmconst::constant_2a(1) == 1);
  CHECK(dmconst::constant_2a(3) == 48);
  CHECK(dmconst::constant_2c(1) == 1);
  CHECK(dmconst::constant_2c(2) == 6);
  CHECK(dmconst::constant_cyclic(3, 2) == 18);
  CHECK(dmconst::constant_cyclic(6, 0) == 1);
  CHECK(dmconst::constant_cyclic(4, 1) == 4);
}

TEST_CASE("fixed-locus constants: closed forms up to 8") {
  for (int ell = 0; ell <= 8; ++ell) {
    CHECK(dmconst::constant_2a(ell) == Rat(1, 4) * rat_pow(Rat(2), ell) * rat_factorial(ell + 1));
    for (int r : {3, 4, 6}) {
      CHECK(dmconst::constant_cyclic(r, ell) == rat_pow(Rat(r), ell) * rat_factorial(ell));
    }
  }
  for (int ell = 1; ell <= 8; ++ell) {
    CHECK(dmconst::constant_2c(ell) == dmconst::constant_2a(ell));
  }
}

TEST_CASE("fixed-locus constants: argument errors") {
  CHECK_THROWS_AS(dmconst::constant_2c(0), EngineError);
  CHECK_THROWS_AS(dmconst::constant_2a(-1), EngineError);
  CHECK_THROWS_AS(dmconst::constant_cyclic(5, 1), EngineError);
  CHECK_THROWS_AS(dmconst::constant_cyclic(2, 1), EngineError);
}

TEST_CASE("dilaton recursion identities") {
  auto report = dmconst::verify_dilaton_recursion(8);
  CHECK(report.ok());
  CHECK(report.checked == 27);  // 3 identities per ell in 0..8

  // The printed instances:
  // ell = 2: sum C(2,k) k! (2-k)! = 2+2+2 = 6 = 3!.
  Rat s = 0;
  for (int k = 0; k <= 2; ++k) s += rat_binomial(2, k) * rat_factorial(k) * rat_factorial(2 - k);
  CHECK(s == 6);
  // ell = 1: 2! = 3! - 2*2!.
  CHECK(rat_factorial(2) == rat_factorial(3) - Rat(2) * rat_factorial(2));
  // ell = 0: constant_2a(1)/constant_2a(0) = 4.
  CHECK(dmconst::constant_2a(1) / dmconst::constant_2a(0) == 4);

  CHECK_THROWS_AS(dmconst::verify_dilaton_recursion(1), EngineError);
}
