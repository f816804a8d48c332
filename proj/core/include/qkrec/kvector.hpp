#pragma once

#include <memory>
#include <vector>

#include "qkrec/series.hpp"

namespace qkrec {

/// Fixed basis phi_alpha of K^0(X) with the exact pairing
/// g_{alpha beta} = chi(X, phi_alpha ⊗ phi_beta). Component 0 is the unit
/// class 1 of K^0(X).
struct BasisInfo {
  int rank = 1;
  std::vector<std::vector<Rat>> pairing;
  std::vector<std::vector<Rat>> pairing_inverse;

  static std::shared_ptr<const BasisInfo> point();
  static std::shared_ptr<const BasisInfo> make(int rank, std::vector<std::vector<Rat>> pairing);
  bool is_point() const;
};

using BasisPtr = std::shared_ptr<const BasisInfo>;

/// Element of K = K^0(X) ⊗ Lambda in the fixed basis.
class KVector {
 public:
  KVector(BasisPtr basis, ConfigPtr config);
  static KVector basis_vector(BasisPtr basis, ConfigPtr config, int alpha);
  static KVector unit(BasisPtr basis, ConfigPtr config) { return basis_vector(basis, config, 0); }

  const BasisPtr& basis() const { return basis_; }
  const ConfigPtr& config() const { return config_; }
  int rank() const { return basis_->rank; }
  const Series& component(int alpha) const { return comps_[static_cast<size_t>(alpha)]; }
  Series& component(int alpha) { return comps_[static_cast<size_t>(alpha)]; }

  bool is_zero() const;
  int filtration_order() const;  // min over components

  KVector operator-() const;
  KVector& operator+=(const KVector& o);
  KVector& operator-=(const KVector& o);
  friend KVector operator+(KVector a, const KVector& b) { return a += b; }
  friend KVector operator-(KVector a, const KVector& b) { return a -= b; }
  KVector scaled(const Series& s) const;
  KVector scaled(const Cyclo& c) const;
  KVector adams_novikov(int r) const;

  /// Pairing (this, phi_alpha) = sum_gamma this^gamma g_{gamma alpha}.
  Series pair_with_basis(int alpha) const;

  /// Rank-1 convenience: the single component.
  const Series& scalar() const;

  bool operator==(const KVector& o) const;
  bool operator!=(const KVector& o) const { return !(*this == o); }

 private:
  BasisPtr basis_;
  ConfigPtr config_;
  std::vector<Series> comps_;
};

}  // namespace qkrec
