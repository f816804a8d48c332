#pragma once

#include <climits>
#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qkrec/cyclo.hpp"

namespace qkrec {

/// Truncation order and variable set of the local ring Lambda. Every formal
/// parameter and the Novikov variable have filtration weight 1; all series
/// arithmetic is mod Lambda_+^{N+1}.
struct SeriesRingConfig {
  std::vector<std::string> variables;
  bool novikov_enabled = false;
  int truncation_order = 1;  // N >= 1

  bool operator==(const SeriesRingConfig&) const = default;
  void validate() const;
  int var_index(const std::string& name) const;  // -1 if absent
};

using ConfigPtr = std::shared_ptr<const SeriesRingConfig>;

ConfigPtr make_config(std::vector<std::string> variables, int truncation_order,
                      bool novikov_enabled = false);

/// Exponent vector over the formal parameters plus a Novikov degree.
struct MultiIndex {
  std::vector<int> exponents;
  int novikov = 0;

  int total_degree() const {
    int d = novikov;
    for (int e : exponents) d += e;
    return d;
  }
  auto operator<=>(const MultiIndex&) const = default;
};

constexpr int kInfiniteOrder = INT_MAX;

/// Sparse canonical series over Q(zeta_12), truncated by total filtration
/// degree. Zero coefficients are never stored, so equality is map equality.
class Series {
 public:
  explicit Series(ConfigPtr config);
  static Series constant(ConfigPtr config, Cyclo value);
  static Series variable(ConfigPtr config, int var_index);
  static Series novikov(ConfigPtr config, int degree = 1);
  static Series monomial(ConfigPtr config, MultiIndex idx, Cyclo value);

  const ConfigPtr& config() const { return config_; }
  const std::map<MultiIndex, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Cyclo constant_term() const;
  Cyclo coefficient(const MultiIndex& idx) const;
  /// Smallest total degree of a stored term; kInfiniteOrder for zero.
  int filtration_order() const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series scaled(const Cyclo& c) const;

  /// Inverse of a unit (nonzero constant term); geometric expansion of the
  /// Lambda_+ part. Throws non_unit otherwise.
  Series inverse() const;
  /// log of a series with constant term 1: -sum (1-a)^k / k.
  Series log_unit() const;
  /// Novikov degree d -> r*d on every term; formal parameters untouched.
  Series adams_novikov(int r) const;
  /// Coefficient series of (variable var_index)^power, variable removed.
  Series extract_coefficient(int var_index, int power) const;

  bool operator==(const Series& o) const;
  bool operator!=(const Series& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void insert_term(const MultiIndex& idx, const Cyclo& value);
  void require_same_config(const Series& o) const;

  ConfigPtr config_;
  std::map<MultiIndex, Cyclo> terms_;
};

}  // namespace qkrec
