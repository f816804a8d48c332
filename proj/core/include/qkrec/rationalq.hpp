#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qkrec/laurent.hpp"

namespace qkrec {

/// Zeroth and first Taylor coefficients of a rational function at a root of
/// unity zeta0, in the local coordinate (q/zeta0 - 1).
struct JetAtRoot {
  Cyclo root;
  KVector value;
  KVector derivative;
};

/// Rational function in q with KVector coefficients: a Laurent-polynomial
/// numerator over a multiset of linear factors (q - a)^m with exact nonzero
/// constants a. Powers of q stay in the numerator (negative exponents).
/// Kept reduced: no denominator factor divides the numerator.
class RationalQ {
 public:
  explicit RationalQ(LaurentQ numerator);
  RationalQ(LaurentQ numerator, std::map<Cyclo, int, CycloLess> denominator);

  const LaurentQ& numerator() const { return num_; }
  const std::map<Cyclo, int, CycloLess>& denominator() const { return den_; }
  const BasisPtr& basis() const { return num_.basis(); }
  const ConfigPtr& config() const { return num_.config(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.empty(); }
  /// Throws if a denominator factor remains after reduction.
  const LaurentQ& as_laurent() const;

  RationalQ operator-() const;
  RationalQ& operator+=(const RationalQ& o);
  RationalQ& operator-=(const RationalQ& o);
  friend RationalQ operator+(RationalQ a, const RationalQ& b) { return a += b; }
  friend RationalQ operator-(RationalQ a, const RationalQ& b) { return a -= b; }
  /// Pointwise product; rank-1 coefficients only.
  friend RationalQ operator*(const RationalQ& a, const RationalQ& b);
  RationalQ scaled(const Series& s) const;
  RationalQ scaled(const Cyclo& c) const;
  RationalQ shifted(int k) const;  // * q^k
  RationalQ adams_novikov(int r) const;
  /// Multiply by 1/(q-a)^m.
  RationalQ with_pole(const Cyclo& a, int m) const;

  /// The Laurent-polynomial part of the partial-fraction decomposition;
  /// principal parts at every finite nonzero pole are dropped.
  LaurentQ laurent_part() const;

  /// First-order jet at a root of unity; error if zeta0 is a pole.
  JetAtRoot jet_at_root(const Cyclo& zeta0) const;

  /// Substitute q = x^{-r}. Denominator roots must admit all r-th roots in
  /// Q(zeta_12) or the pole is unrepresentable.
  RationalQ subst_inverse_power(int r) const;

  /// Residue of the form f(x) dx/x. At finite a != 0 the standard residue;
  /// at 0 the coefficient of x^0 in the expansion at 0; at infinity minus
  /// the coefficient of x^0 in the expansion at infinity.
  KVector residue_at(const Cyclo& a) const;
  KVector residue_at_infinity() const;

  /// Exact evaluation away from poles.
  KVector eval_at(const Cyclo& q0) const;

  bool operator==(const RationalQ& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  void reduce();

  LaurentQ num_;
  std::map<Cyclo, int, CycloLess> den_;
};

/// t(q + c) as a rational function (negative powers of q produce a pole at -c).
RationalQ substitute_shift(const LaurentQ& t, const Cyclo& c);

/// The transform behind t-bar_2^new: q |-> -t(q+2)/(q+1). At the fixed point
/// (t-bar_2(1) = 0) the pole at q = -1 cancels.
RationalQ t2_new_transform(const LaurentQ& tbar2);

/// All r-th roots of c inside Q(zeta_12), or nullopt when they do not all lie
/// in the field.
std::optional<std::vector<Cyclo>> all_rth_roots(const Cyclo& c, int r);

}  // namespace qkrec
