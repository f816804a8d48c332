#include "qkrec/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qkrec/errors.hpp"

namespace qkrec {

void SeriesRingConfig::validate() const {
  if (truncation_order < 1) {
    throw EngineError(ErrorKind::invalid_argument, "truncation order must be >= 1");
  }
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty() || !seen.insert(v).second) {
      throw EngineError(ErrorKind::invalid_argument, "variable names must be unique and nonempty");
    }
  }
}

int SeriesRingConfig::var_index(const std::string& name) const {
  for (size_t j = 0; j < variables.size(); ++j) {
    if (variables[j] == name) return static_cast<int>(j);
  }
  return -1;
}

ConfigPtr make_config(std::vector<std::string> variables, int truncation_order,
                      bool novikov_enabled) {
  SeriesRingConfig cfg;
  cfg.variables = std::move(variables);
  cfg.truncation_order = truncation_order;
  cfg.novikov_enabled = novikov_enabled;
  cfg.validate();
  return std::make_shared<const SeriesRingConfig>(std::move(cfg));
}

Series::Series(ConfigPtr config) : config_(std::move(config)) {
  if (!config_) throw EngineError(ErrorKind::invalid_argument, "null series config");
}

Series Series::constant(ConfigPtr config, Cyclo value) {
  Series s(std::move(config));
  MultiIndex idx;
  idx.exponents.assign(s.config_->variables.size(), 0);
  s.insert_term(idx, value);
  return s;
}

Series Series::variable(ConfigPtr config, int var_index) {
  Series s(std::move(config));
  if (var_index < 0 || var_index >= static_cast<int>(s.config_->variables.size())) {
    throw EngineError(ErrorKind::invalid_argument, "variable index out of range");
  }
  MultiIndex idx;
  idx.exponents.assign(s.config_->variables.size(), 0);
  idx.exponents[static_cast<size_t>(var_index)] = 1;
  s.insert_term(idx, Cyclo::one());
  return s;
}

Series Series::novikov(ConfigPtr config, int degree) {
  Series s(std::move(config));
  if (!s.config_->novikov_enabled) {
    throw EngineError(ErrorKind::invalid_argument, "Novikov variable disabled in this ring");
  }
  MultiIndex idx;
  idx.exponents.assign(s.config_->variables.size(), 0);
  idx.novikov = degree;
  s.insert_term(idx, Cyclo::one());
  return s;
}

Series Series::monomial(ConfigPtr config, MultiIndex idx, Cyclo value) {
  Series s(std::move(config));
  if (idx.exponents.size() != s.config_->variables.size()) {
    throw EngineError(ErrorKind::invalid_argument, "multi-index arity mismatch");
  }
  s.insert_term(idx, value);
  return s;
}

void Series::insert_term(const MultiIndex& idx, const Cyclo& value) {
  if (value.is_zero()) return;
  if (idx.novikov < 0) throw EngineError(ErrorKind::invalid_argument, "negative Novikov degree");
  for (int e : idx.exponents) {
    if (e < 0) throw EngineError(ErrorKind::invalid_argument, "negative exponent in series");
  }
  if (idx.total_degree() > config_->truncation_order) return;
  auto [it, inserted] = terms_.emplace(idx, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Series::require_same_config(const Series& o) const {
  if (config_ == o.config_) return;
  if (*config_ == *o.config_) return;
  throw EngineError(ErrorKind::config_mismatch, "series ring config mismatch");
}

Cyclo Series::constant_term() const {
  if (terms_.empty()) return Cyclo::zero();
  const auto& first = *terms_.begin();
  if (first.first.total_degree() == 0) return first.second;
  return Cyclo::zero();
}

Cyclo Series::coefficient(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Cyclo::zero() : it->second;
}

int Series::filtration_order() const {
  if (terms_.empty()) return kInfiniteOrder;
  int best = kInfiniteOrder;
  for (const auto& [idx, c] : terms_) best = std::min(best, idx.total_degree());
  return best;
}

Series Series::operator-() const {
  Series r(config_);
  for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
  return r;
}

Series& Series::operator+=(const Series& o) {
  require_same_config(o);
  for (const auto& [idx, c] : o.terms_) insert_term(idx, c);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same_config(o);
  for (const auto& [idx, c] : o.terms_) insert_term(idx, -c);
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  a.require_same_config(b);
  Series r(a.config_);
  const int cap = a.config_->truncation_order;
  for (const auto& [ia, ca] : a.terms_) {
    const int da = ia.total_degree();
    for (const auto& [ib, cb] : b.terms_) {
      if (da + ib.total_degree() > cap) continue;
      MultiIndex idx;
      idx.exponents.resize(ia.exponents.size());
      for (size_t j = 0; j < ia.exponents.size(); ++j) {
        idx.exponents[j] = ia.exponents[j] + ib.exponents[j];
      }
      idx.novikov = ia.novikov + ib.novikov;
      r.insert_term(idx, ca * cb);
    }
  }
  return r;
}

Series Series::scaled(const Cyclo& c) const {
  Series r(config_);
  if (c.is_zero()) return r;
  for (const auto& [idx, v] : terms_) r.terms_.emplace(idx, v * c);
  return r;
}

Series Series::inverse() const {
  Cyclo c0 = constant_term();
  if (c0.is_zero()) {
    throw EngineError(ErrorKind::non_unit, "series_invert: constant term is zero (non-unit)");
  }
  Cyclo c0inv = c0.inverse();
  // a = c0 (1 + u), u in Lambda_+; a^{-1} = c0^{-1} sum (-u)^k.
  Series u = scaled(c0inv);
  Series minus_u = Series::constant(config_, Cyclo::one()) - u;
  Series acc = Series::constant(config_, Cyclo::one());
  Series pow = Series::constant(config_, Cyclo::one());
  for (int k = 1; k <= config_->truncation_order; ++k) {
    pow = pow * minus_u;
    if (pow.is_zero()) break;
    acc += pow;
  }
  return acc.scaled(c0inv);
}

Series Series::log_unit() const {
  if (constant_term() != Cyclo::one()) {
    throw EngineError(ErrorKind::log_of_non_unit, "series_log_unit: constant term is not 1");
  }
  Series u = Series::constant(config_, Cyclo::one()) - *this;  // 1 - a, in Lambda_+
  Series acc(config_);
  Series pow = Series::constant(config_, Cyclo::one());
  for (int k = 1; k <= config_->truncation_order; ++k) {
    pow = pow * u;
    if (pow.is_zero()) break;
    acc -= pow.scaled(Cyclo(Rat(1, k)));
  }
  return acc;
}

Series Series::adams_novikov(int r) const {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "adams_novikov: r must be positive");
  if (r == 1) return *this;
  Series result(config_);
  for (const auto& [idx, c] : terms_) {
    MultiIndex scaled_idx = idx;
    scaled_idx.novikov = idx.novikov * r;
    result.insert_term(scaled_idx, c);
  }
  return result;
}

Series Series::extract_coefficient(int var_index, int power) const {
  if (var_index < 0 || var_index >= static_cast<int>(config_->variables.size())) {
    throw EngineError(ErrorKind::invalid_argument, "extract_coefficient: bad variable index");
  }
  Series result(config_);
  for (const auto& [idx, c] : terms_) {
    if (idx.exponents[static_cast<size_t>(var_index)] != power) continue;
    MultiIndex out = idx;
    out.exponents[static_cast<size_t>(var_index)] = 0;
    result.insert_term(out, c);
  }
  return result;
}

bool Series::operator==(const Series& o) const {
  require_same_config(o);
  return terms_ == o.terms_;
}

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (size_t j = 0; j < idx.exponents.size(); ++j) {
      if (idx.exponents[j] == 0) continue;
      os << "*" << config_->variables[j];
      if (idx.exponents[j] != 1) os << "^" << idx.exponents[j];
    }
    if (idx.novikov != 0) {
      os << "*Q";
      if (idx.novikov != 1) os << "^" << idx.novikov;
    }
  }
  return os.str();
}

}  // namespace qkrec
