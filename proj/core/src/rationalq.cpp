#include "qkrec/rationalq.hpp"

#include <algorithm>

#include "qkrec/errors.hpp"

namespace qkrec {

namespace {

using JetS = std::vector<Cyclo>;    // scalar jet in the local coordinate s
using JetV = std::vector<KVector>;  // KVector-valued jet

JetS jet_mul(const JetS& a, const JetS& b, size_t order) {
  JetS r(order + 1, Cyclo::zero());
  for (size_t i = 0; i <= order && i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j <= order && j < b.size(); ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

JetV jet_scale(const JetV& a, const JetS& b, size_t order, const BasisPtr& basis,
               const ConfigPtr& config) {
  JetV r(order + 1, KVector(basis, config));
  for (size_t i = 0; i <= order && i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j <= order && j < b.size(); ++j) {
      r[i + j] += a[i].scaled(b[j]);
    }
  }
  return r;
}

JetS jet_inverse(const JetS& a, size_t order) {
  if (a.empty() || a[0].is_zero()) {
    throw EngineError(ErrorKind::division_failed, "jet inversion at a zero constant term");
  }
  Cyclo c0inv = a[0].inverse();
  JetS inv(order + 1, Cyclo::zero());
  inv[0] = c0inv;
  for (size_t k = 1; k <= order; ++k) {
    Cyclo acc;
    for (size_t i = 1; i <= k && i < a.size(); ++i) acc += a[i] * inv[k - i];
    inv[k] = -(c0inv * acc);
  }
  return inv;
}

/// Generalized binomial C(e, k) for any integer e (exact).
Cyclo binom(long e, long k) { return Cyclo(rat_binomial(e, k)); }

/// Jet of the numerator at q = a + s (a != 0 when negative exponents occur).
JetV numerator_jet_shift(const LaurentQ& num, const Cyclo& a, size_t order) {
  JetV jet(order + 1, KVector(num.basis(), num.config()));
  for (const auto& [e, coeff] : num.terms()) {
    // (a+s)^e = sum_k C(e,k) a^{e-k} s^k
    for (size_t k = 0; k <= order; ++k) {
      Cyclo factor = binom(e, static_cast<long>(k)) * a.pow(e - static_cast<long>(k));
      if (factor.is_zero()) continue;
      jet[k] += coeff.scaled(factor);
    }
  }
  return jet;
}

/// Jet of the numerator at q = zeta0 (1 + s'), i.e. in the coordinate q/zeta0 - 1.
JetV numerator_jet_root(const LaurentQ& num, const Cyclo& zeta0, size_t order) {
  JetV jet(order + 1, KVector(num.basis(), num.config()));
  for (const auto& [e, coeff] : num.terms()) {
    // zeta0^e (1+s')^e
    Cyclo ze = zeta0.pow(e);
    for (size_t k = 0; k <= order; ++k) {
      Cyclo factor = ze * binom(e, static_cast<long>(k));
      if (factor.is_zero()) continue;
      jet[k] += coeff.scaled(factor);
    }
  }
  return jet;
}

ScalarLaurent denominator_polynomial(const std::map<Cyclo, int, CycloLess>& den,
                                     const Cyclo& skip_root, int skip_count) {
  ScalarLaurent p = ScalarLaurent::constant(Cyclo::one());
  for (const auto& [root, mult] : den) {
    int m = mult;
    if (root == skip_root) m -= skip_count;
    for (int j = 0; j < m; ++j) p = p * ScalarLaurent::linear(root);
  }
  return p;
}

std::optional<Rat> rational_rth_root(const Rat& c, int r) {
  if (c == 0) return Rat(0);
  if (c < 0 && r % 2 == 0) return std::nullopt;
  mpz_class num = c.get_num(), den = c.get_den();
  mpz_class num_abs = abs(num);
  mpz_class nroot, droot;
  int exact_n = mpz_root(nroot.get_mpz_t(), num_abs.get_mpz_t(), static_cast<unsigned long>(r));
  int exact_d = mpz_root(droot.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(r));
  if (!exact_n || !exact_d) return std::nullopt;
  Rat root(nroot, droot);
  root.canonicalize();
  if (c < 0) root = -root;  // r odd here
  return root;
}

}  // namespace

std::optional<std::vector<Cyclo>> all_rth_roots(const Cyclo& c, int r) {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "all_rth_roots: r must be positive");
  if (c.is_zero()) return std::nullopt;
  if (r == 1) return std::vector<Cyclo>{c};
  if (12 % r != 0) return std::nullopt;  // mu_r not inside mu_12
  // Search one root of the form s * zeta^m with s rational > 0.
  for (int j = 0; j < 12; ++j) {
    Cyclo d = c * Cyclo::zeta_pow(-j);
    if (!d.is_rational()) continue;
    Rat dr = d.rational_part();
    if (dr <= 0) continue;  // negative rationals recur at j+6
    auto s = rational_rth_root(dr, r);
    if (!s) continue;
    for (int m = 0; m < 12; ++m) {
      if ((r * m) % 12 != j % 12) continue;
      Cyclo rho0 = Cyclo(*s) * Cyclo::zeta_pow(m);
      std::vector<Cyclo> roots;
      roots.reserve(static_cast<size_t>(r));
      for (int t = 0; t < r; ++t) {
        Cyclo rho = rho0 * Cyclo::zeta_pow((12 / r) * t);
        if (rho.pow(r) != c) return std::nullopt;
        roots.push_back(rho);
      }
      return roots;
    }
  }
  return std::nullopt;
}

RationalQ::RationalQ(LaurentQ numerator) : num_(std::move(numerator)) {}

RationalQ::RationalQ(LaurentQ numerator, std::map<Cyclo, int, CycloLess> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  for (const auto& [root, mult] : den_) {
    if (root.is_zero() || mult < 1) {
      throw EngineError(ErrorKind::invalid_argument, "denominator roots must be nonzero, mult >= 1");
    }
  }
  reduce();
}

void RationalQ::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    bool erased = false;
    while (it->second > 0 && num_.eval_at(it->first).is_zero()) {
      num_ = num_.divide_by_linear(it->first);
      if (--it->second == 0) {
        it = den_.erase(it);
        erased = true;
        break;
      }
    }
    if (!erased) ++it;
  }
}

const LaurentQ& RationalQ::as_laurent() const {
  if (!den_.empty()) {
    throw EngineError(ErrorKind::division_failed, "rational function has a nontrivial denominator");
  }
  return num_;
}

RationalQ RationalQ::operator-() const {
  RationalQ r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalQ& RationalQ::operator+=(const RationalQ& o) {
  // Common denominator: take max multiplicity per root.
  std::map<Cyclo, int, CycloLess> common = den_;
  for (const auto& [root, mult] : o.den_) {
    auto it = common.find(root);
    if (it == common.end()) {
      common.emplace(root, mult);
    } else {
      it->second = std::max(it->second, mult);
    }
  }
  ScalarLaurent mine = ScalarLaurent::constant(Cyclo::one());
  ScalarLaurent theirs = ScalarLaurent::constant(Cyclo::one());
  for (const auto& [root, mult] : common) {
    auto ita = den_.find(root);
    auto itb = o.den_.find(root);
    int ma = ita == den_.end() ? 0 : ita->second;
    int mb = itb == o.den_.end() ? 0 : itb->second;
    for (int j = 0; j < mult - ma; ++j) mine = mine * ScalarLaurent::linear(root);
    for (int j = 0; j < mult - mb; ++j) theirs = theirs * ScalarLaurent::linear(root);
  }
  num_ = num_.mul_scalar(mine) + o.num_.mul_scalar(theirs);
  den_ = std::move(common);
  reduce();
  return *this;
}

RationalQ& RationalQ::operator-=(const RationalQ& o) { return *this += -o; }

RationalQ operator*(const RationalQ& a, const RationalQ& b) {
  LaurentQ num = a.num_.mul_rank1(b.num_);
  std::map<Cyclo, int, CycloLess> den = a.den_;
  for (const auto& [root, mult] : b.den_) den[root] += mult;
  return RationalQ(std::move(num), std::move(den));
}

RationalQ RationalQ::scaled(const Series& s) const {
  RationalQ r(*this);
  r.num_ = r.num_.scaled(s);
  r.reduce();
  return r;
}

RationalQ RationalQ::scaled(const Cyclo& c) const {
  RationalQ r(*this);
  r.num_ = r.num_.scaled(c);
  r.reduce();
  return r;
}

RationalQ RationalQ::shifted(int k) const {
  RationalQ r(*this);
  r.num_ = r.num_.shifted(k);
  return r;
}

RationalQ RationalQ::adams_novikov(int r) const {
  RationalQ out(*this);
  out.num_ = out.num_.adams_novikov(r);
  out.reduce();
  return out;
}

RationalQ RationalQ::with_pole(const Cyclo& a, int m) const {
  if (a.is_zero()) {
    RationalQ r(*this);
    r.num_ = r.num_.shifted(-m);
    return r;
  }
  RationalQ r(*this);
  r.den_[a] += m;
  r.reduce();
  return r;
}

LaurentQ RationalQ::laurent_part() const {
  if (den_.empty()) return num_;
  // Subtract all principal parts, then divide exactly by the denominator.
  LaurentQ adjusted = num_;
  for (const auto& [root, mult] : den_) {
    // Jet of num / prod_{b != root}(q-b)^{m_b} at q = root, to order mult-1.
    size_t order = static_cast<size_t>(mult - 1);
    JetV njet = numerator_jet_shift(num_, root, order);
    ScalarLaurent rest = denominator_polynomial(den_, root, mult);
    JetS rest_jet(order + 1, Cyclo::zero());
    for (size_t k = 0; k <= order; ++k) {
      // (a+s)-expansion coefficient of the scalar polynomial
      Cyclo acc;
      for (const auto& [e, c] : rest.terms()) {
        acc += c * binom(e, static_cast<long>(k)) * root.pow(e - static_cast<long>(k));
      }
      rest_jet[k] = acc;
    }
    JetS rest_inv = jet_inverse(rest_jet, order);
    JetV local = jet_scale(njet, rest_inv, order, num_.basis(), num_.config());
    // Principal coefficient of (q-root)^{-j} is local[mult - j].
    for (int j = 1; j <= mult; ++j) {
      const KVector& c = local[static_cast<size_t>(mult - j)];
      if (c.is_zero()) continue;
      // Subtract c * D / (q-root)^j from the numerator.
      ScalarLaurent complement = denominator_polynomial(den_, root, j);
      adjusted -= LaurentQ::monomial(0, c).mul_scalar(complement);
    }
  }
  for (const auto& [root, mult] : den_) {
    for (int j = 0; j < mult; ++j) adjusted = adjusted.divide_by_linear(root);
  }
  return adjusted;
}

JetAtRoot RationalQ::jet_at_root(const Cyclo& zeta0) const {
  if (zeta0.is_zero()) {
    throw EngineError(ErrorKind::invalid_argument, "jet_at_root: zeta0 must be nonzero");
  }
  if (den_.count(zeta0)) {
    throw EngineError(ErrorKind::pole_at_point, "jet_at_root: function has a pole at the root");
  }
  JetV njet = numerator_jet_root(num_, zeta0, 1);
  JetS djet(2, Cyclo::zero());
  djet[0] = Cyclo::one();
  for (const auto& [root, mult] : den_) {
    // (q - root) at q = zeta0 (1+s'): (zeta0 - root) + zeta0 s'
    JetS lin{zeta0 - root, zeta0};
    for (int j = 0; j < mult; ++j) djet = jet_mul(djet, lin, 1);
  }
  JetS dinv = jet_inverse(djet, 1);
  JetV local = jet_scale(njet, dinv, 1, num_.basis(), num_.config());
  return JetAtRoot{zeta0, local[0], local[1]};
}

RationalQ RationalQ::subst_inverse_power(int r) const {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "subst_inverse_power: r >= 1");
  LaurentQ num(num_.basis(), num_.config());
  for (const auto& [e, c] : num_.terms()) num.add_term(-r * e, c);
  std::map<Cyclo, int, CycloLess> den;
  Cyclo scale = Cyclo::one();
  int shift = 0;
  for (const auto& [root, mult] : den_) {
    // (x^{-r} - a) = (-a) x^{-r} (x^r - 1/a) = (-a) x^{-r} prod_rho (x - rho)
    auto roots = all_rth_roots(root.inverse(), r);
    if (!roots) {
      throw EngineError(ErrorKind::unrepresentable_pole,
                        "subst_inverse_power: pole image not representable in Q(zeta_12)");
    }
    scale = scale * (-root).pow(-mult);
    shift += r * mult;
    for (const auto& rho : *roots) den[rho] += mult;
  }
  num = num.scaled(scale).shifted(shift);
  return RationalQ(std::move(num), std::move(den));
}

KVector RationalQ::residue_at(const Cyclo& a) const {
  const BasisPtr& basis = num_.basis();
  const ConfigPtr& config = num_.config();
  if (a.is_zero()) {
    // Coefficient of x^0 in the expansion of f at 0.
    if (num_.is_zero()) return KVector(basis, config);
    int need = std::max(0, -num_.min_exp());
    JetS expansion(static_cast<size_t>(need) + 1, Cyclo::zero());
    expansion[0] = Cyclo::one();
    for (const auto& [root, mult] : den_) {
      // 1/(x-root)^mult = (-root)^{-mult} sum_k C(mult-1+k, k) (x/root)^k
      JetS factor(static_cast<size_t>(need) + 1, Cyclo::zero());
      Cyclo lead = (-root).pow(-mult);
      for (int k = 0; k <= need; ++k) {
        factor[static_cast<size_t>(k)] =
            lead * binom(mult - 1 + k, k) * root.pow(-static_cast<long>(k));
      }
      expansion = jet_mul(expansion, factor, static_cast<size_t>(need));
    }
    KVector acc(basis, config);
    for (const auto& [e, c] : num_.terms()) {
      if (e > 0) continue;
      acc += c.scaled(expansion[static_cast<size_t>(-e)]);
    }
    return acc;
  }
  auto it = den_.find(a);
  if (it == den_.end()) return KVector(basis, config);  // regular point, a != 0
  int m = it->second;
  size_t order = static_cast<size_t>(m - 1);
  // Res_a f dx/x = s^{m-1}-jet of num(a+s) / ((a+s) * prod_{b != a}(a+s-b)^{m_b})
  JetV njet = numerator_jet_shift(num_, a, order);
  JetS djet(order + 1, Cyclo::zero());
  djet[0] = a;
  if (order >= 1) djet[1] = Cyclo::one();  // the 1/x factor of dx/x
  for (const auto& [root, mult] : den_) {
    int count = (root == a) ? 0 : mult;
    JetS lin{a - root, Cyclo::one()};
    for (int j = 0; j < count; ++j) djet = jet_mul(djet, lin, order);
  }
  JetS dinv = jet_inverse(djet, order);
  JetV local = jet_scale(njet, dinv, order, basis, config);
  return local[order];
}

KVector RationalQ::residue_at_infinity() const {
  const BasisPtr& basis = num_.basis();
  const ConfigPtr& config = num_.config();
  if (num_.is_zero()) return KVector(basis, config);
  // Expansion at infinity in u = 1/x; Res_inf = -[x^0] there.
  int need = std::max(0, num_.max_exp());
  JetS expansion(static_cast<size_t>(need) + 1, Cyclo::zero());
  expansion[0] = Cyclo::one();
  int total_mult = 0;
  for (const auto& [root, mult] : den_) {
    total_mult += mult;
    // 1/(x-root)^m = u^m sum_k C(m-1+k,k) root^k u^k ; the u^m prefix is
    // accounted globally below.
    JetS factor(static_cast<size_t>(need) + 1, Cyclo::zero());
    for (int k = 0; k <= need; ++k) {
      factor[static_cast<size_t>(k)] = binom(mult - 1 + k, k) * root.pow(k);
    }
    expansion = jet_mul(expansion, factor, static_cast<size_t>(need));
  }
  // f = sum_e num_e u^{-e} * u^{total_mult} * expansion(u); [u^0] picks
  // expansion[e - total_mult].
  KVector acc(basis, config);
  for (const auto& [e, c] : num_.terms()) {
    int idx = e - total_mult;
    if (idx < 0 || idx > need) continue;
    acc += c.scaled(expansion[static_cast<size_t>(idx)]);
  }
  return -acc;
}

KVector RationalQ::eval_at(const Cyclo& q0) const {
  Cyclo d = Cyclo::one();
  for (const auto& [root, mult] : den_) {
    Cyclo factor = q0 - root;
    if (factor.is_zero()) {
      throw EngineError(ErrorKind::pole_at_point, "eval_at: q0 is a pole");
    }
    d = d * factor.pow(mult);
  }
  return num_.eval_at(q0).scaled(d.inverse());
}

RationalQ substitute_shift(const LaurentQ& t, const Cyclo& c) {
  RationalQ acc((LaurentQ(t.basis(), t.config())));
  if (c.is_zero()) return RationalQ(t);
  for (const auto& [e, coeff] : t.terms()) {
    if (e >= 0) {
      LaurentQ part(t.basis(), t.config());
      for (int k = 0; k <= e; ++k) {
        part.add_term(k, coeff.scaled(binom(e, k) * c.pow(e - k)));
      }
      acc += RationalQ(std::move(part));
    } else {
      std::map<Cyclo, int, CycloLess> den;
      den.emplace(-c, -e);
      acc += RationalQ(LaurentQ::monomial(0, coeff), std::move(den));
    }
  }
  return acc;
}

RationalQ t2_new_transform(const LaurentQ& tbar2) {
  RationalQ shifted = substitute_shift(tbar2, Cyclo(2));
  return (-shifted).with_pole(Cyclo(-1), 1);
}

}  // namespace qkrec
