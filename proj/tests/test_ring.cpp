#include <doctest.h>

#include <random>

#include "qkrec/errors.hpp"
#include "qkrec/series.hpp"

using namespace qkrec;

namespace {

Series series_exp_of_plus_part(const Series& u) {
  // Test-side exponential oracle: sum u^k / k! for u in Lambda_+.
  REQUIRE(u.filtration_order() >= 1);
  Series acc = Series::constant(u.config(), Cyclo::one());
  Series pow = Series::constant(u.config(), Cyclo::one());
  Rat fact = 1;
  for (int k = 1; k <= u.config()->truncation_order; ++k) {
    pow = pow * u;
    fact *= k;
    acc += pow.scaled(Cyclo(Rat(1) / fact));
  }
  return acc;
}

Series random_series(const ConfigPtr& config, std::mt19937_64& rng, bool unit) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> pick(0, 2);
  Series s(config);
  if (unit) s += Series::constant(config, Cyclo(Rat(1 + std::abs(coeff(rng)))));
  size_t nvars = config->variables.size();
  std::uniform_int_distribution<int> vdist(0, static_cast<int>(nvars) - 1);
  for (int t = 0; t < 4; ++t) {
    MultiIndex idx;
    idx.exponents.assign(nvars, 0);
    idx.exponents[static_cast<size_t>(vdist(rng))] += 1;
    if (pick(rng) == 0) idx.exponents[static_cast<size_t>(vdist(rng))] += 1;
    s += Series::monomial(config, idx, Cyclo(Rat(coeff(rng))));
  }
  return s;
}

}  // namespace

TEST_CASE("cyclotomic constants and the minimal polynomial") {
  Cyclo i = Cyclo::i();
  CHECK(i * i == -Cyclo::one());
  Cyclo w = Cyclo::omega();
  CHECK(w * w * w == Cyclo::one());
  CHECK(w != Cyclo::one());
  CHECK(w * w == Cyclo::omega2());

  // zeta * zeta^3 reduces by zeta^4 = zeta^2 - 1.
  Cyclo z = Cyclo::zeta_pow(1);
  CHECK(z * Cyclo::zeta_pow(3) == Cyclo(-1, 0, 1, 0));
  // zeta^4 - zeta^2 + 1 = 0 as an identity of operations.
  CHECK((z.pow(4) - z.pow(2) + Cyclo::one()).is_zero());

  // The twelve roots of unity are distinct and each satisfies x^12 = 1.
  const auto& roots = Cyclo::roots_of_unity();
  for (int a = 0; a < 12; ++a) {
    CHECK(roots[static_cast<size_t>(a)].pow(12) == Cyclo::one());
    for (int b = 0; b < a; ++b) {
      CHECK(roots[static_cast<size_t>(a)] != roots[static_cast<size_t>(b)]);
    }
    CHECK(roots[static_cast<size_t>(a)].root_of_unity_exponent() == a);
  }
  // omega^{+-1}, omega^{+-2}, +-i, +-1 all live in the table.
  CHECK(Cyclo::omega() == Cyclo::zeta_pow(4));
  CHECK(Cyclo::omega().inverse() == Cyclo::zeta_pow(-4));
  CHECK(Cyclo::i() == Cyclo::zeta_pow(3));
  CHECK((-Cyclo::i()) == Cyclo::zeta_pow(9));
  CHECK((-Cyclo::one()) == Cyclo::zeta_pow(6));
}

TEST_CASE("cyclotomic inverses") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 100; ++t) {
    Cyclo a(Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng)));
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == Cyclo::one());
  }
  CHECK_THROWS_AS(Cyclo::zero().inverse(), EngineError);
}

TEST_CASE("series multiplication truncates by total degree") {
  auto c1 = make_config({"eps"}, 1);
  Series one1 = Series::constant(c1, Cyclo::one());
  Series e1 = Series::variable(c1, 0);
  CHECK((one1 + e1) * (one1 - e1) == one1);

  auto c2 = make_config({"eps"}, 2);
  Series one2 = Series::constant(c2, Cyclo::one());
  Series e2 = Series::variable(c2, 0);
  CHECK((one2 + e2) * (one2 - e2) == one2 - e2 * e2);
  CHECK((Series(c2) * (one2 + e2)).is_zero());
}

TEST_CASE("series inversion") {
  auto cfg = make_config({"eps"}, 2);
  Series one = Series::constant(cfg, Cyclo::one());
  Series e = Series::variable(cfg, 0);
  CHECK((one - e).inverse() == one + e + e * e);
  CHECK(Series::constant(cfg, Cyclo(2)).inverse() == Series::constant(cfg, Cyclo(Rat(1, 2))));
  CHECK_THROWS_AS(e.inverse(), EngineError);
}

TEST_CASE("series log of a unit") {
  auto cfg = make_config({"eps"}, 2);
  Series one = Series::constant(cfg, Cyclo::one());
  Series e = Series::variable(cfg, 0);
  CHECK(one.log_unit().is_zero());
  CHECK((one + e).log_unit() == e - (e * e).scaled(Cyclo(Rat(1, 2))));
  // exp-then-log round trip: exp(eps) = 1 + eps + eps^2/2 at N = 2.
  Series exp_e = series_exp_of_plus_part(e);
  CHECK(exp_e == one + e + (e * e).scaled(Cyclo(Rat(1, 2))));
  CHECK(exp_e.log_unit() == e);
  CHECK_THROWS_AS((one + one).log_unit(), EngineError);
}

TEST_CASE("adams operations act on Novikov degrees only") {
  auto cfg = make_config({"eps"}, 2, /*novikov=*/true);
  Series e = Series::variable(cfg, 0);
  CHECK(e.adams_novikov(3) == e);
  CHECK(e.adams_novikov(1) == e);

  Series q1 = Series::novikov(cfg, 1);
  CHECK(q1.adams_novikov(2) == Series::novikov(cfg, 2));
  CHECK(q1.adams_novikov(3).is_zero());  // Q^3 exceeds the truncation

  std::mt19937_64 rng(11);
  auto big = make_config({"a", "b"}, 6, /*novikov=*/true);
  for (int t = 0; t < 20; ++t) {
    Series s = random_series(big, rng, false) +
               Series::novikov(big, 1) * random_series(big, rng, false);
    CHECK(s.adams_novikov(2).adams_novikov(3) == s.adams_novikov(6));
  }
}

TEST_CASE("filtration order") {
  auto cfg = make_config({"eps"}, 3);
  Series e = Series::variable(cfg, 0);
  CHECK(Series(cfg).filtration_order() == kInfiniteOrder);
  CHECK((e * e + e * e * e).filtration_order() == 2);
  CHECK((Series::constant(cfg, Cyclo::one()) + e).filtration_order() == 0);
}

TEST_CASE("ring axioms hold exactly in canonical form") {
  std::mt19937_64 rng(13);
  auto cfg = make_config({"a", "b"}, 4);
  for (int t = 0; t < 50; ++t) {
    Series a = random_series(cfg, rng, false);
    Series b = random_series(cfg, rng, false);
    Series c = random_series(cfg, rng, false);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("inverse is exact for units") {
  std::mt19937_64 rng(17);
  auto cfg = make_config({"a", "b"}, 4);
  Series one = Series::constant(cfg, Cyclo::one());
  for (int t = 0; t < 30; ++t) {
    Series a = random_series(cfg, rng, true);
    CHECK(a * a.inverse() == one);
  }
}

TEST_CASE("filtration order is superadditive under products") {
  std::mt19937_64 rng(19);
  auto cfg = make_config({"a", "b"}, 4);
  for (int t = 0; t < 50; ++t) {
    Series a = random_series(cfg, rng, false);
    Series b = random_series(cfg, rng, false);
    Series p = a * b;
    if (p.is_zero()) continue;
    long bound = static_cast<long>(a.filtration_order()) + b.filtration_order();
    CHECK(p.filtration_order() >= std::min(bound, static_cast<long>(cfg->truncation_order) + 1));
  }
}

TEST_CASE("config mismatch is an error") {
  auto c1 = make_config({"eps"}, 2);
  auto c2 = make_config({"eta"}, 2);
  Series a = Series::variable(c1, 0);
  Series b = Series::variable(c2, 0);
  CHECK_THROWS_AS(a + b, EngineError);
  auto c3 = make_config({"eps"}, 2);  // equal by value: fine
  CHECK(a + Series::variable(c3, 0) == a.scaled(Cyclo(2)));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(make_config({"x", "x"}, 2), EngineError);
  CHECK_THROWS_AS(make_config({"x"}, 0), EngineError);
}
