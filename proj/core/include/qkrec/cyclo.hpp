#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "qkrec/rational.hpp"

namespace qkrec {

/// Element of Q(zeta_12) in the power basis {1, z, z^2, z^3} where z is a
/// primitive 12th root of unity, z^4 = z^2 - 1. Hosts every evaluation point
/// the theory needs: +-1, +-i, omega^{+-1}, omega^{+-2}.
class Cyclo {
 public:
  Cyclo() : c_{} {}
  Cyclo(const Rat& r) : c_{r, 0, 0, 0} {}  // implicit: rationals embed
  Cyclo(long n) : c_{Rat(n), 0, 0, 0} {}   // implicit: integers embed
  Cyclo(Rat a, Rat b, Rat c, Rat d) : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Cyclo zero() { return Cyclo(); }
  static Cyclo one() { return Cyclo(1); }
  static Cyclo i() { return Cyclo(0, 0, 0, 1); }          // z^3
  static Cyclo omega() { return Cyclo(-1, 0, 1, 0); }     // z^4 = z^2 - 1
  static Cyclo omega2() { return Cyclo(0, 0, -1, 0); }    // z^8 = -z^2
  /// z^k for any integer k (period 12).
  static Cyclo zeta_pow(long k);
  /// The twelve 12th roots of unity, index j -> z^j.
  static const std::vector<Cyclo>& roots_of_unity();

  const Rat& coeff(int j) const { return c_[j]; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  const Rat& rational_part() const { return c_[0]; }

  Cyclo operator-() const { return Cyclo(-c_[0], -c_[1], -c_[2], -c_[3]); }
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }

  /// Multiplicative inverse; throws non_unit on zero.
  Cyclo inverse() const;
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  Cyclo pow(long e) const;

  bool operator==(const Cyclo& o) const { return c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }
  /// Total order usable as a map key (coefficient-lexicographic).
  bool operator<(const Cyclo& o) const;

  /// If this value is a 12th root of unity, its exponent in [0,12).
  std::optional<int> root_of_unity_exponent() const;

  /// "p/q" when rational, otherwise "[a,b,c,d]" in the power basis.
  std::string to_string() const;

 private:
  std::array<Rat, 4> c_;
};

struct CycloLess {
  bool operator()(const Cyclo& a, const Cyclo& b) const { return a < b; }
};

}  // namespace qkrec
