#pragma once

#include <map>

#include "qkrec/kvector.hpp"

namespace qkrec {

/// Laurent polynomial in q with constant Q(zeta_12) coefficients. Used for
/// denominator expansions and scalar q-algebra.
class ScalarLaurent {
 public:
  ScalarLaurent() = default;
  static ScalarLaurent constant(Cyclo c);
  /// q - a
  static ScalarLaurent linear(const Cyclo& a);

  const std::map<int, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void set(int exp, Cyclo c);
  Cyclo coefficient(int exp) const;
  int min_exp() const;
  int max_exp() const;

  ScalarLaurent operator-() const;
  ScalarLaurent& operator+=(const ScalarLaurent& o);
  friend ScalarLaurent operator+(ScalarLaurent a, const ScalarLaurent& b) { return a += b; }
  friend ScalarLaurent operator*(const ScalarLaurent& a, const ScalarLaurent& b);
  ScalarLaurent scaled(const Cyclo& c) const;
  ScalarLaurent shifted(int k) const;  // * q^k
  Cyclo eval(const Cyclo& q0) const;

 private:
  std::map<int, Cyclo> terms_;
};

/// Element of K_+ = K[q, q^{-1}]: finite map from q-exponent to KVector,
/// canonical (no zero coefficients).
class LaurentQ {
 public:
  LaurentQ(BasisPtr basis, ConfigPtr config);
  static LaurentQ monomial(int exp, KVector coeff);
  /// (1 - q) * unit class — the dilaton shift v.
  static LaurentQ dilaton_shift(BasisPtr basis, ConfigPtr config);

  const BasisPtr& basis() const { return basis_; }
  const ConfigPtr& config() const { return config_; }
  const std::map<int, KVector>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exp() const;
  int max_exp() const;

  void add_term(int exp, const KVector& coeff);
  KVector coefficient(int exp) const;

  LaurentQ operator-() const;
  LaurentQ& operator+=(const LaurentQ& o);
  LaurentQ& operator-=(const LaurentQ& o);
  friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { return a += b; }
  friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { return a -= b; }

  LaurentQ scaled(const Series& s) const;
  LaurentQ scaled(const Cyclo& c) const;
  LaurentQ shifted(int k) const;  // * q^k
  LaurentQ adams_novikov(int r) const;
  /// Product with a scalar Laurent polynomial (K-module structure).
  LaurentQ mul_scalar(const ScalarLaurent& s) const;
  /// Pointwise product; rank-1 only (K^0(pt) ring structure).
  LaurentQ mul_rank1(const LaurentQ& o) const;

  /// Substitute q = q0 (exact). q0 = 0 with negative exponents is an error.
  KVector eval_at(const Cyclo& q0) const;

  /// (t(q) - t(1)) / (q - 1), exact.
  LaurentQ d_operator() const;

  /// Exact division by (q - a); throws division_failed if the remainder is
  /// nonzero. a may be 0 (plain shift).
  LaurentQ divide_by_linear(const Cyclo& a) const;

  bool operator==(const LaurentQ& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentQ& o) const { return !(*this == o); }

 private:
  BasisPtr basis_;
  ConfigPtr config_;
  std::map<int, KVector> terms_;
};

}  // namespace qkrec
