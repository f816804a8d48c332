#include "qkrec/point_backend.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "qkrec/errors.hpp"

namespace qkrec {

std::vector<std::pair<int, int>> d_monomial(int e) {
  std::vector<std::pair<int, int>> terms;
  if (e > 0) {
    for (int j = 0; j < e; ++j) terms.emplace_back(j, 1);
  } else if (e < 0) {
    for (int j = e; j <= -1; ++j) terms.emplace_back(j, -1);
  }
  return terms;
}

Rat PointBackend::monomial_correlator(std::vector<int> exponents) const {
  if (exponents.size() < 3) {
    throw EngineError(ErrorKind::unstable_query,
                      "point correlator needs n >= 3 insertions (unstable query)");
  }
  std::sort(exponents.begin(), exponents.end());
  if (exponents.size() == 3) return 1;
  if (cache_enabled_) {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(exponents);
    if (it != memo_.end()) return it->second;
  }
  Rat value = compute(exponents);
  if (cache_enabled_) {
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(exponents), value);
  }
  return value;
}

Rat PointBackend::compute(const std::vector<int>& key) const {
  const size_t n = key.size();
  auto zero_pos = std::find(key.begin(), key.end(), 0);
  if (zero_pos != key.end()) {
    // String equation on the unit slot: remove it, then add the D-expansion
    // of each remaining slot.
    std::vector<int> rest;
    rest.reserve(n - 1);
    for (auto it = key.begin(); it != key.end(); ++it) {
      if (it == zero_pos) continue;
      rest.push_back(*it);
    }
    Rat value = monomial_correlator(rest);
    for (size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == 0) continue;
      std::vector<int> modified = rest;
      for (const auto& [j, sign] : d_monomial(rest[i])) {
        modified[i] = j;
        Rat term = monomial_correlator(modified);
        value += (sign > 0) ? term : -term;
      }
    }
    return value;
  }
  // All exponents nonzero: expand every slot as 1 + (q^k - 1). Terms with
  // >= n-2 reduced factors vanish (dim M_{0,n} = n-3); the rest have at
  // least three unit slots and reduce through the string case.
  // E(K) = sum over T, |T| <= n-3, of c(|T|) E(K_T), with
  // c(t) = sum_{v=0}^{n-3-t} C(n-t, v) (-1)^v.
  std::vector<Rat> c(n, Rat(0));
  for (size_t t = 0; t + 3 <= n; ++t) {
    Rat acc = 0;
    for (size_t v = 0; v + t + 3 <= n; ++v) {
      Rat b = rat_binomial(static_cast<long>(n - t), static_cast<long>(v));
      acc += (v % 2 == 0) ? b : -b;
    }
    c[t] = acc;
  }
  Rat value = 0;
  const size_t max_keep = n - 3;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    size_t kept = static_cast<size_t>(__builtin_popcount(mask));
    if (kept > max_keep) continue;
    std::vector<int> sub(key);
    for (size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) sub[i] = 0;
    }
    value += c[kept] * monomial_correlator(sub);
  }
  return value;
}

Cyclo PointBackend::correlator(const std::vector<ScalarLaurent>& inputs) const {
  if (inputs.size() < 3) {
    throw EngineError(ErrorKind::unstable_query, "point correlator needs n >= 3 insertions");
  }
  // Multilinear expansion into monomials.
  Cyclo total;
  std::vector<int> exps(inputs.size(), 0);
  std::function<void(size_t, Cyclo)> walk = [&](size_t slot, Cyclo coeff) {
    if (slot == inputs.size()) {
      total += coeff * Cyclo(monomial_correlator(exps));
      return;
    }
    for (const auto& [e, c] : inputs[slot].terms()) {
      exps[slot] = e;
      walk(slot + 1, coeff * c);
    }
  };
  walk(0, Cyclo::one());
  return total;
}

size_t PointBackend::cache_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

void PointBackend::clear_cache() const {
  std::unique_lock lock(mutex_);
  memo_.clear();
}

}  // namespace qkrec
