#include "qkrec/laurent.hpp"

#include "qkrec/errors.hpp"

namespace qkrec {

ScalarLaurent ScalarLaurent::constant(Cyclo c) {
  ScalarLaurent s;
  s.set(0, std::move(c));
  return s;
}

ScalarLaurent ScalarLaurent::linear(const Cyclo& a) {
  ScalarLaurent s;
  s.set(1, Cyclo::one());
  s.set(0, -a);
  return s;
}

void ScalarLaurent::set(int exp, Cyclo c) {
  if (c.is_zero()) {
    terms_.erase(exp);
  } else {
    terms_[exp] = std::move(c);
  }
}

Cyclo ScalarLaurent::coefficient(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Cyclo::zero() : it->second;
}

int ScalarLaurent::min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int ScalarLaurent::max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

ScalarLaurent ScalarLaurent::operator-() const {
  ScalarLaurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

ScalarLaurent& ScalarLaurent::operator+=(const ScalarLaurent& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ScalarLaurent operator*(const ScalarLaurent& a, const ScalarLaurent& b) {
  ScalarLaurent r;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Cyclo prod = ca * cb;
      if (prod.is_zero()) continue;
      auto it = r.terms_.find(ea + eb);
      if (it == r.terms_.end()) {
        r.terms_.emplace(ea + eb, prod);
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

ScalarLaurent ScalarLaurent::scaled(const Cyclo& c) const {
  ScalarLaurent r;
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

ScalarLaurent ScalarLaurent::shifted(int k) const {
  ScalarLaurent r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e + k, v);
  return r;
}

Cyclo ScalarLaurent::eval(const Cyclo& q0) const {
  Cyclo acc;
  for (const auto& [e, v] : terms_) acc += v * q0.pow(e);
  return acc;
}

LaurentQ::LaurentQ(BasisPtr basis, ConfigPtr config)
    : basis_(std::move(basis)), config_(std::move(config)) {}

LaurentQ LaurentQ::monomial(int exp, KVector coeff) {
  LaurentQ t(coeff.basis(), coeff.config());
  t.add_term(exp, coeff);
  return t;
}

LaurentQ LaurentQ::dilaton_shift(BasisPtr basis, ConfigPtr config) {
  LaurentQ v(basis, config);
  KVector unit = KVector::unit(basis, config);
  v.add_term(0, unit);
  v.add_term(1, -unit);
  return v;
}

int LaurentQ::min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentQ::max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

void LaurentQ::add_term(int exp, const KVector& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

KVector LaurentQ::coefficient(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? KVector(basis_, config_) : it->second;
}

LaurentQ LaurentQ::operator-() const {
  LaurentQ r(basis_, config_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentQ& LaurentQ::operator+=(const LaurentQ& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentQ& LaurentQ::operator-=(const LaurentQ& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentQ LaurentQ::scaled(const Series& s) const {
  LaurentQ r(basis_, config_);
  for (const auto& [e, c] : terms_) r.add_term(e, c.scaled(s));
  return r;
}

LaurentQ LaurentQ::scaled(const Cyclo& c) const {
  LaurentQ r(basis_, config_);
  for (const auto& [e, v] : terms_) r.add_term(e, v.scaled(c));
  return r;
}

LaurentQ LaurentQ::shifted(int k) const {
  LaurentQ r(basis_, config_);
  for (const auto& [e, v] : terms_) r.terms_.emplace(e + k, v);
  return r;
}

LaurentQ LaurentQ::adams_novikov(int r) const {
  LaurentQ out(basis_, config_);
  for (const auto& [e, v] : terms_) out.add_term(e, v.adams_novikov(r));
  return out;
}

LaurentQ LaurentQ::mul_scalar(const ScalarLaurent& s) const {
  LaurentQ r(basis_, config_);
  for (const auto& [e, v] : terms_) {
    for (const auto& [es, cs] : s.terms()) {
      r.add_term(e + es, v.scaled(cs));
    }
  }
  return r;
}

LaurentQ LaurentQ::mul_rank1(const LaurentQ& o) const {
  if (basis_->rank != 1 || o.basis_->rank != 1) {
    throw EngineError(ErrorKind::invalid_argument, "LaurentQ product requires rank-1 basis");
  }
  LaurentQ r(basis_, config_);
  for (const auto& [ea, va] : terms_) {
    for (const auto& [eb, vb] : o.terms_) {
      r.add_term(ea + eb, va.scaled(vb.scalar()));
    }
  }
  return r;
}

KVector LaurentQ::eval_at(const Cyclo& q0) const {
  if (q0.is_zero() && !terms_.empty() && min_exp() < 0) {
    throw EngineError(ErrorKind::pole_at_point, "eval_at: q0 = 0 with negative exponents");
  }
  KVector acc(basis_, config_);
  for (const auto& [e, v] : terms_) acc += v.scaled(q0.pow(e));
  return acc;
}

LaurentQ LaurentQ::d_operator() const {
  LaurentQ shifted_input = *this;
  KVector at_one = eval_at(Cyclo::one());
  shifted_input.add_term(0, -at_one);
  return shifted_input.divide_by_linear(Cyclo::one());
}

LaurentQ LaurentQ::divide_by_linear(const Cyclo& a) const {
  LaurentQ q(basis_, config_);
  if (terms_.empty()) return q;
  if (a.is_zero()) return shifted(-1);
  // (q - a) * u = t with u_j = sum of descending recursion from the top:
  // u_{M-1} = t_M, u_{j-1} = t_j + a * u_j; remainder t_m + a * u_m must vanish.
  const int lo = min_exp(), hi = max_exp();
  KVector carry(basis_, config_);  // u_j while descending
  bool have_carry = false;
  for (int e = hi; e > lo; --e) {
    KVector u = coefficient(e);
    if (have_carry) u += carry.scaled(a);
    q.add_term(e - 1, u);
    carry = u;
    have_carry = true;
  }
  KVector rem = coefficient(lo);
  if (have_carry) rem += carry.scaled(a);
  if (!rem.is_zero()) {
    throw EngineError(ErrorKind::division_failed, "divide_by_linear: nonzero remainder");
  }
  return q;
}

}  // namespace qkrec
