#include "qkrec/cyclo.hpp"

#include <sstream>

namespace qkrec {

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  for (int j = 0; j < 4; ++j) c_[j] += o.c_[j];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  for (int j = 0; j < 4; ++j) c_[j] -= o.c_[j];
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  // Convolution in degrees 0..6, then reduction by z^4 = z^2 - 1, z^5 = z^3 - z,
  // z^6 = -1.
  std::array<Rat, 7> p{};
  for (int a = 0; a < 4; ++a) {
    if (c_[a] == 0) continue;
    for (int b = 0; b < 4; ++b) {
      if (o.c_[b] == 0) continue;
      p[a + b] += c_[a] * o.c_[b];
    }
  }
  std::array<Rat, 4> r{};
  for (int j = 0; j < 4; ++j) r[j] = p[j];
  r[2] += p[4];
  r[0] -= p[4];
  r[3] += p[5];
  r[1] -= p[5];
  r[0] -= p[6];
  c_ = std::move(r);
  return *this;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw EngineError(ErrorKind::non_unit, "inverse of zero in Q(zeta_12)");
  if (is_rational()) return Cyclo(Rat(1) / c_[0]);
  // Solve M x = e0 where M's columns are the coordinates of (*this) * z^j.
  Rat m[4][5];
  for (int j = 0; j < 4; ++j) {
    Cyclo col = *this * zeta_pow(j);
    for (int i = 0; i < 4; ++i) m[i][j] = col.coeff(i);
  }
  for (int i = 0; i < 4; ++i) m[i][4] = (i == 0) ? 1 : 0;
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int row = col; row < 4; ++row) {
      if (m[row][col] != 0) { pivot = row; break; }
    }
    if (pivot < 0) throw EngineError(ErrorKind::non_unit, "singular multiplication matrix");
    if (pivot != col) for (int k = 0; k < 5; ++k) std::swap(m[pivot][k], m[col][k]);
    Rat inv = Rat(1) / m[col][col];
    for (int k = col; k < 5; ++k) m[col][k] *= inv;
    for (int row = 0; row < 4; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rat f = m[row][col];
      for (int k = col; k < 5; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return Cyclo(m[0][4], m[1][4], m[2][4], m[3][4]);
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo r = one(), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Cyclo Cyclo::zeta_pow(long k) {
  k %= 12;
  if (k < 0) k += 12;
  return roots_of_unity()[static_cast<size_t>(k)];
}

const std::vector<Cyclo>& Cyclo::roots_of_unity() {
  static const std::vector<Cyclo> table = [] {
    std::vector<Cyclo> t;
    t.reserve(12);
    Cyclo z(0, 1, 0, 0);
    Cyclo cur = one();
    for (int j = 0; j < 12; ++j) {
      t.push_back(cur);
      cur *= z;
    }
    return t;
  }();
  return table;
}

bool Cyclo::operator<(const Cyclo& o) const {
  for (int j = 0; j < 4; ++j) {
    int cmp = mpq_cmp(c_[j].get_mpq_t(), o.c_[j].get_mpq_t());
    if (cmp != 0) return cmp < 0;
  }
  return false;
}

std::optional<int> Cyclo::root_of_unity_exponent() const {
  const auto& roots = roots_of_unity();
  for (int j = 0; j < 12; ++j) {
    if (*this == roots[static_cast<size_t>(j)]) return j;
  }
  return std::nullopt;
}

std::string Cyclo::to_string() const {
  if (is_rational()) return rat_to_string(c_[0]);
  std::ostringstream os;
  os << "[" << rat_to_string(c_[0]) << "," << rat_to_string(c_[1]) << ","
     << rat_to_string(c_[2]) << "," << rat_to_string(c_[3]) << "]";
  return os.str();
}

}  // namespace qkrec
