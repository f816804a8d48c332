#pragma once

#include <string>
#include <vector>

#include "qkrec/rational.hpp"

namespace qkrec {

/// Cycle type ell = (ell_1, ell_2, ...): how many r-cycles the permutation
/// has. ell! = prod ell_r!, |ell| = sum r*ell_r.
struct CycleType {
  std::vector<int> counts;  // counts[r-1] = ell_r, trailing zeros stripped

  CycleType() = default;
  explicit CycleType(std::vector<int> c) : counts(std::move(c)) { normalize(); }

  void normalize() {
    while (!counts.empty() && counts.back() == 0) counts.pop_back();
  }
  int count(int r) const {
    return (r >= 1 && r <= static_cast<int>(counts.size())) ? counts[static_cast<size_t>(r - 1)] : 0;
  }
  void add(int r, int delta) {
    if (r > static_cast<int>(counts.size())) counts.resize(static_cast<size_t>(r), 0);
    counts[static_cast<size_t>(r - 1)] += delta;
    normalize();
  }
  int max_length() const { return static_cast<int>(counts.size()); }
  int total_cycles() const {
    int n = 0;
    for (int c : counts) n += c;
    return n;
  }
  /// |ell| = sum r * ell_r — the number of marked points.
  int weighted_size() const {
    int n = 0;
    for (size_t j = 0; j < counts.size(); ++j) n += static_cast<int>(j + 1) * counts[j];
    return n;
  }
  /// ell! = prod_r ell_r!
  Rat factorial() const {
    Rat f = 1;
    for (int c : counts) f *= rat_factorial(c);
    return f;
  }

  auto operator<=>(const CycleType&) const = default;
  std::string to_string() const {
    std::string s = "[";
    for (size_t j = 0; j < counts.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(counts[j]);
    }
    return s + "]";
  }
};

}  // namespace qkrec
