#include <doctest.h>

#include <random>

#include "qkrec/errors.hpp"
#include "qkrec/rationalq.hpp"

using namespace qkrec;

namespace {

struct Fixture {
  BasisPtr basis = BasisInfo::point();
  ConfigPtr config = make_config({"eps"}, 2);
  KVector unit() const { return KVector::unit(basis, config); }
  LaurentQ mono(int e, Cyclo c = Cyclo::one()) const {
    return LaurentQ::monomial(e, unit().scaled(c));
  }
  LaurentQ random_laurent(std::mt19937_64& rng, int max_abs_exp = 4) const {
    std::uniform_int_distribution<int> e(-max_abs_exp, max_abs_exp);
    std::uniform_int_distribution<int> c(-3, 3);
    LaurentQ t(basis, config);
    for (int j = 0; j < 3; ++j) t.add_term(e(rng), unit().scaled(Cyclo(Rat(c(rng)))));
    return t;
  }
};

}  // namespace

TEST_CASE("d_operator on monomials and the defining identity") {
  Fixture f;
  CHECK(f.mono(1).d_operator() == f.mono(0));                    // q -> 1
  CHECK(f.mono(2).d_operator() == f.mono(1) + f.mono(0));        // q^2 -> q + 1
  CHECK(f.mono(-1).d_operator() == f.mono(-1, -Cyclo::one()));   // q^{-1} -> -q^{-1}

  // (q-1) * Dt + t(1) = t for random Laurent polynomials.
  std::mt19937_64 rng(23);
  ScalarLaurent qminus1 = ScalarLaurent::linear(Cyclo::one());
  for (int trial = 0; trial < 200; ++trial) {
    LaurentQ t = f.random_laurent(rng);
    LaurentQ back = t.d_operator().mul_scalar(qminus1);
    back.add_term(0, t.eval_at(Cyclo::one()));
    CHECK(back == t);
  }
}

TEST_CASE("eval_at") {
  Fixture f;
  LaurentQ v = f.mono(0) - f.mono(1);  // 1 - q
  CHECK(v.eval_at(Cyclo::one()).is_zero());
  CHECK(v.eval_at(-Cyclo::one()) == f.unit().scaled(Cyclo(2)));
  CHECK(f.mono(2).eval_at(Cyclo::i()) == f.unit().scaled(-Cyclo::one()));
  CHECK_THROWS_AS(f.mono(-1).eval_at(Cyclo::zero()), EngineError);
}

TEST_CASE("laurent_part drops exactly the principal parts") {
  Fixture f;
  // A Laurent polynomial is its own Laurent part.
  RationalQ plain(f.mono(2) + f.mono(-1));
  CHECK(plain.laurent_part() == f.mono(2) + f.mono(-1));

  // q^2/(q-1) -> q + 1 (long-division oracle).
  RationalQ g = RationalQ(f.mono(2)).with_pole(Cyclo::one(), 1);
  CHECK(g.laurent_part() == f.mono(1) + f.mono(0));

  // 1/((q-1)(q+1)) is pure principal parts.
  RationalQ h = RationalQ(f.mono(0)).with_pole(Cyclo::one(), 1).with_pole(-Cyclo::one(), 1);
  CHECK(h.laurent_part().is_zero());

  // Projection property and "only principal parts remain" on random inputs.
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> root(0, 11);
  std::uniform_int_distribution<int> mult(1, 2);
  for (int trial = 0; trial < 60; ++trial) {
    RationalQ r = RationalQ(f.random_laurent(rng, 3))
                      .with_pole(Cyclo::zeta_pow(root(rng)), mult(rng))
                      .with_pole(Cyclo::zeta_pow(root(rng)), 1);
    LaurentQ lp = r.laurent_part();
    CHECK(RationalQ(lp).laurent_part() == lp);
    RationalQ principal = r - RationalQ(lp);
    CHECK(principal.laurent_part().is_zero());
  }
}

TEST_CASE("jet_at_root") {
  Fixture f;
  LaurentQ v = f.mono(0) - f.mono(1);  // 1 - q
  JetAtRoot j = RationalQ(v).jet_at_root(-Cyclo::one());
  CHECK(j.value == f.unit().scaled(Cyclo(2)));
  CHECK(j.derivative == f.unit());

  JetAtRoot c = RationalQ(f.mono(0, Cyclo(Rat(5, 3)))).jet_at_root(Cyclo::omega());
  CHECK(c.value == f.unit().scaled(Cyclo(Rat(5, 3))));
  CHECK(c.derivative.is_zero());

  JetAtRoot q = RationalQ(f.mono(1)).jet_at_root(Cyclo::i());
  CHECK(q.value == f.unit().scaled(Cyclo::i()));
  CHECK(q.derivative == f.unit().scaled(Cyclo::i()));

  RationalQ pole = RationalQ(f.mono(0)).with_pole(Cyclo::i(), 1);
  CHECK_THROWS_AS(pole.jet_at_root(Cyclo::i()), EngineError);

  // Round trip: f - value - derivative*(q/zeta - 1) vanishes to second order.
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> root(0, 11);
  for (int trial = 0; trial < 40; ++trial) {
    Cyclo zeta = Cyclo::zeta_pow(root(rng));
    LaurentQ t = f.random_laurent(rng, 3);
    JetAtRoot jet = RationalQ(t).jet_at_root(zeta);
    LaurentQ h = t;
    h.add_term(0, -jet.value);
    // derivative * (q/zeta - 1)
    h.add_term(1, -jet.derivative.scaled(zeta.inverse()));
    h.add_term(0, jet.derivative);
    if (h.is_zero()) continue;
    LaurentQ once = h.divide_by_linear(zeta);
    CHECK_NOTHROW(once.divide_by_linear(zeta));
  }
}

TEST_CASE("t2-new transform") {
  Fixture f;
  LaurentQ zero(f.basis, f.config);
  CHECK(t2_new_transform(zero).is_zero());

  // t(q) = q - 1 -> g = -1, with jet (-1, 0) at q = -1.
  LaurentQ t = f.mono(1) - f.mono(0);
  RationalQ g = t2_new_transform(t);
  CHECK(g.is_laurent());
  CHECK(g.as_laurent() == f.mono(0, -Cyclo::one()));
  JetAtRoot j = g.jet_at_root(-Cyclo::one());
  CHECK(j.value == f.unit().scaled(-Cyclo::one()));
  CHECK(j.derivative.is_zero());

  // t(q) = (q-1)^2 -> g = -(q+1).
  LaurentQ t2 = f.mono(2) - f.mono(1).scaled(Cyclo(2)) + f.mono(0);
  RationalQ g2 = t2_new_transform(t2);
  CHECK(g2.as_laurent() == -(f.mono(1) + f.mono(0)));

  // General identity g(q-1) = -t(q+1)/q on a sample with negative powers:
  // t = q^{-1} - 1 (vanishes at 1): g(q) = -t(q+2)/(q+1) = -((q+2)^{-1} - 1)/(q+1)
  // = (q+1)/((q+2)(q+1)) = 1/(q+2).
  LaurentQ t3 = f.mono(-1) - f.mono(0);
  RationalQ g3 = t2_new_transform(t3);
  std::map<Cyclo, int, CycloLess> den;
  den.emplace(Cyclo(-2), 1);
  RationalQ expected(f.mono(0), den);
  CHECK(g3 == expected);
}

TEST_CASE("subst_inverse_power") {
  Fixture f;
  CHECK(RationalQ(f.mono(1)).subst_inverse_power(1) == RationalQ(f.mono(-1)));
  CHECK(RationalQ(f.mono(0) - f.mono(1)).subst_inverse_power(2) ==
        RationalQ(f.mono(0) - f.mono(-2)));

  // 1/(q-1) -> x/(1-x): numerator -x over (x-1).
  RationalQ g = RationalQ(f.mono(0)).with_pole(Cyclo::one(), 1).subst_inverse_power(1);
  std::map<Cyclo, int, CycloLess> den;
  den.emplace(Cyclo::one(), 1);
  CHECK(g == RationalQ(f.mono(1, -Cyclo::one()), den));

  // Involution on Laurent polynomials.
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentQ t = f.random_laurent(rng);
    CHECK(RationalQ(t).subst_inverse_power(1).subst_inverse_power(1) == RationalQ(t));
  }

  // Pole images must factor over Q(zeta_12): 1/(q - i) under r = 2 does not.
  RationalQ bad = RationalQ(f.mono(0)).with_pole(Cyclo::i(), 1);
  CHECK_THROWS_AS(bad.subst_inverse_power(2), EngineError);
  // ... while 1/(q+1) under r = 2 factors through x = +-i.
  RationalQ ok = RationalQ(f.mono(0)).with_pole(-Cyclo::one(), 1);
  RationalQ img = ok.subst_inverse_power(2);
  CHECK(img.denominator().count(Cyclo::i()) == 1);
  CHECK(img.denominator().count(-Cyclo::i()) == 1);
}

TEST_CASE("residues of f(x) dx/x") {
  Fixture f;
  RationalQ one(f.mono(0));
  CHECK(one.residue_at(Cyclo::zero()) == f.unit());
  CHECK(one.residue_at_infinity() == -f.unit());
  CHECK(RationalQ(f.mono(1)).residue_at(Cyclo::zero()).is_zero());

  // x/(x+1): Res_{-1} = 1, Res_0 = 0, Res_inf = -1.
  RationalQ g = RationalQ(f.mono(1)).with_pole(-Cyclo::one(), 1);
  CHECK(g.residue_at(-Cyclo::one()) == f.unit());
  CHECK(g.residue_at(Cyclo::zero()).is_zero());
  CHECK(g.residue_at_infinity() == -f.unit());

  // Residue at a regular nonzero point vanishes.
  CHECK(g.residue_at(Cyclo::i()).is_zero());

  // Global residue theorem on random functions, including double poles.
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> root(0, 11);
  std::uniform_int_distribution<int> mult(1, 2);
  for (int trial = 0; trial < 80; ++trial) {
    LaurentQ num = f.random_laurent(rng, 3);
    if (num.is_zero()) continue;
    std::map<Cyclo, int, CycloLess> den;
    den[Cyclo::zeta_pow(root(rng))] += mult(rng);
    den[Cyclo::zeta_pow(root(rng))] += 1;
    RationalQ h(num, den);
    KVector total = h.residue_at(Cyclo::zero()) + h.residue_at_infinity();
    for (const auto& [r, m] : h.denominator()) total += h.residue_at(r);
    CHECK(total.is_zero());
  }
}

TEST_CASE("rational arithmetic reduces to canonical form") {
  Fixture f;
  // (q^2 - 1)/(q - 1) reduces to q + 1.
  RationalQ g = RationalQ(f.mono(2) - f.mono(0)).with_pole(Cyclo::one(), 1);
  CHECK(g.is_laurent());
  CHECK(g.as_laurent() == f.mono(1) + f.mono(0));

  // Addition over distinct poles keeps both factors reduced.
  RationalQ a = RationalQ(f.mono(0)).with_pole(Cyclo::one(), 1);
  RationalQ b = RationalQ(f.mono(0)).with_pole(-Cyclo::one(), 1);
  RationalQ sum = a + b;
  // 1/(q-1) + 1/(q+1) = 2q/((q-1)(q+1))
  CHECK(sum.numerator() == f.mono(1, Cyclo(2)));
  CHECK(sum.denominator().size() == 2);
  CHECK((a - a).is_zero());
}

TEST_CASE("rational evaluation away from poles") {
  Fixture f;
  RationalQ g = RationalQ(f.mono(2)).with_pole(Cyclo::one(), 1);  // q^2/(q-1)
  CHECK(g.eval_at(Cyclo(2)) == f.unit().scaled(Cyclo(4)));
  CHECK(g.eval_at(-Cyclo::one()) == f.unit().scaled(Cyclo(Rat(-1, 2))));
  CHECK_THROWS_AS(g.eval_at(Cyclo::one()), EngineError);
  // Consistency with the Laurent part plus the principal part 1/(q-1).
  KVector lp = g.laurent_part().eval_at(Cyclo(2));
  KVector principal = f.unit().scaled(Cyclo::one());  // 1/(2-1)
  CHECK(g.eval_at(Cyclo(2)) == lp + principal);
}

TEST_CASE("basis invariants") {
  CHECK_THROWS_AS(BasisInfo::make(2, {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}), EngineError);
  CHECK_THROWS_AS(BasisInfo::make(2, {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}), EngineError);
  auto b = BasisInfo::make(2, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  CHECK(b->pairing_inverse[0][1] == 1);
  CHECK(BasisInfo::point()->is_point());
}
