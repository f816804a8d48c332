#pragma once

#include <map>
#include <shared_mutex>
#include <vector>

#include "qkrec/laurent.hpp"

namespace qkrec {

/// Exact genus-0 point-target correlators <q^{k_1}, ..., q^{k_n}>_{0,n},
/// n >= 3, computed by the string-equation recursion with the 3-point base
/// <f,g,h> = f(1)g(1)h(1) and the dimension vanishing of products of n-2
/// reduced classes on a space of dimension n-3. Memoized on sorted exponent
/// keys; the cache supports concurrent reads and atomic insertion.
class PointBackend {
 public:
  PointBackend() = default;

  /// Correlator of Laurent monomials; throws unstable_query for n <= 2.
  Rat monomial_correlator(std::vector<int> exponents) const;

  /// Multilinear extension to scalar Laurent-polynomial inputs.
  Cyclo correlator(const std::vector<ScalarLaurent>& inputs) const;

  void set_cache_enabled(bool on) { cache_enabled_ = on; }
  size_t cache_size() const;
  void clear_cache() const;

 private:
  Rat compute(const std::vector<int>& key) const;

  mutable std::map<std::vector<int>, Rat> memo_;
  mutable std::shared_mutex mutex_;
  bool cache_enabled_ = true;
};

/// D q^e as (exponent, +-1) monomial pairs: (q^e - 1)/(q - 1).
std::vector<std::pair<int, int>> d_monomial(int e);

}  // namespace qkrec
