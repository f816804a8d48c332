#include "qkrec/kvector.hpp"

#include <algorithm>

#include "qkrec/errors.hpp"

namespace qkrec {

namespace {

std::vector<std::vector<Rat>> invert_rational_matrix(const std::vector<std::vector<Rat>>& m) {
  const size_t n = m.size();
  std::vector<std::vector<Rat>> a(m);
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) {
      throw EngineError(ErrorKind::invalid_argument, "pairing matrix is singular");
    }
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rat d = a[col][col];
    for (size_t k = 0; k < n; ++k) {
      a[col][k] /= d;
      inv[col][k] /= d;
    }
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rat f = a[row][col];
      for (size_t k = 0; k < n; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace

std::shared_ptr<const BasisInfo> BasisInfo::point() {
  static std::shared_ptr<const BasisInfo> p = make(1, {{Rat(1)}});
  return p;
}

std::shared_ptr<const BasisInfo> BasisInfo::make(int rank, std::vector<std::vector<Rat>> pairing) {
  if (rank < 1 || pairing.size() != static_cast<size_t>(rank)) {
    throw EngineError(ErrorKind::invalid_argument, "bad basis rank/pairing");
  }
  for (size_t i = 0; i < pairing.size(); ++i) {
    if (pairing[i].size() != static_cast<size_t>(rank)) {
      throw EngineError(ErrorKind::invalid_argument, "pairing matrix is not square");
    }
    for (size_t j = 0; j < i; ++j) {
      if (pairing[i][j] != pairing[j][i]) {
        throw EngineError(ErrorKind::invalid_argument, "pairing matrix is not symmetric");
      }
    }
  }
  auto info = std::make_shared<BasisInfo>();
  info->rank = rank;
  info->pairing = pairing;
  info->pairing_inverse = invert_rational_matrix(pairing);
  return info;
}

bool BasisInfo::is_point() const {
  return rank == 1 && pairing.size() == 1 && pairing[0][0] == 1;
}

KVector::KVector(BasisPtr basis, ConfigPtr config)
    : basis_(std::move(basis)), config_(std::move(config)) {
  comps_.assign(static_cast<size_t>(basis_->rank), Series(config_));
}

KVector KVector::basis_vector(BasisPtr basis, ConfigPtr config, int alpha) {
  KVector v(std::move(basis), config);
  if (alpha < 0 || alpha >= v.rank()) {
    throw EngineError(ErrorKind::invalid_argument, "basis index out of range");
  }
  v.comps_[static_cast<size_t>(alpha)] = Series::constant(config, Cyclo::one());
  return v;
}

bool KVector::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Series& s) { return s.is_zero(); });
}

int KVector::filtration_order() const {
  int best = kInfiniteOrder;
  for (const auto& s : comps_) best = std::min(best, s.filtration_order());
  return best;
}

KVector KVector::operator-() const {
  KVector r(basis_, config_);
  for (size_t j = 0; j < comps_.size(); ++j) r.comps_[j] = -comps_[j];
  return r;
}

KVector& KVector::operator+=(const KVector& o) {
  for (size_t j = 0; j < comps_.size(); ++j) comps_[j] += o.comps_[j];
  return *this;
}

KVector& KVector::operator-=(const KVector& o) {
  for (size_t j = 0; j < comps_.size(); ++j) comps_[j] -= o.comps_[j];
  return *this;
}

KVector KVector::scaled(const Series& s) const {
  KVector r(basis_, config_);
  for (size_t j = 0; j < comps_.size(); ++j) r.comps_[j] = comps_[j] * s;
  return r;
}

KVector KVector::scaled(const Cyclo& c) const {
  KVector r(basis_, config_);
  for (size_t j = 0; j < comps_.size(); ++j) r.comps_[j] = comps_[j].scaled(c);
  return r;
}

KVector KVector::adams_novikov(int r) const {
  KVector out(basis_, config_);
  for (size_t j = 0; j < comps_.size(); ++j) out.comps_[j] = comps_[j].adams_novikov(r);
  return out;
}

Series KVector::pair_with_basis(int alpha) const {
  Series acc(config_);
  for (int gamma = 0; gamma < rank(); ++gamma) {
    const Rat& g = basis_->pairing[static_cast<size_t>(gamma)][static_cast<size_t>(alpha)];
    if (g == 0) continue;
    acc += comps_[static_cast<size_t>(gamma)].scaled(Cyclo(g));
  }
  return acc;
}

const Series& KVector::scalar() const {
  if (rank() != 1) {
    throw EngineError(ErrorKind::invalid_argument, "scalar() requires a rank-1 basis");
  }
  return comps_[0];
}

bool KVector::operator==(const KVector& o) const { return comps_ == o.comps_; }

}  // namespace qkrec
