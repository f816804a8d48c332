#include "qkrec/backend.hpp"

#include <algorithm>
#include <functional>

#include "qkrec/errors.hpp"

namespace qkrec {

namespace {

bool stable(int genus, int marked_points) {
  if (genus == 0) return marked_points >= 3;
  if (genus == 1) return marked_points >= 1;
  return true;
}

}  // namespace

TauVector::TauVector(BasisPtr basis, ConfigPtr config)
    : basis_(std::move(basis)), config_(std::move(config)) {}

KVector TauVector::at(int r) const {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "tau level must be >= 1");
  if (r > static_cast<int>(levels_.size())) return KVector(basis_, config_);
  return levels_[static_cast<size_t>(r - 1)];
}

void TauVector::set(int r, KVector v) {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "tau level must be >= 1");
  if (v.filtration_order() < 1) {
    throw EngineError(ErrorKind::invalid_argument, "tau entries must lie in Lambda_+");
  }
  if (r > static_cast<int>(levels_.size())) {
    levels_.resize(static_cast<size_t>(r), KVector(basis_, config_));
  }
  levels_[static_cast<size_t>(r - 1)] = std::move(v);
}

bool TauVector::is_zero() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const KVector& v) { return v.is_zero(); });
}

TauVector TauVector::shifted(int r) const {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "shift level must be >= 1");
  if (r == 1) return *this;
  TauVector out(basis_, config_);
  for (int k = 1; k * r <= max_level(); ++k) out.set(k, at(k * r));
  return out;
}

int TauVector::gap_order(const TauVector& o) const {
  int best = kInfiniteOrder;
  int levels = std::max(max_level(), o.max_level());
  for (int r = 1; r <= levels; ++r) {
    KVector diff = at(r) - o.at(r);
    best = std::min(best, diff.filtration_order());
  }
  return best;
}

bool TauVector::operator==(const TauVector& o) const { return gap_order(o) == kInfiniteOrder; }

Backend::Backend(BasisPtr basis, ConfigPtr config, const CorrelatorTable* table,
                 const PointBackend* point, Toggles toggles)
    : basis_(std::move(basis)),
      config_(std::move(config)),
      table_(table),
      point_(point),
      toggles_(toggles) {}

void Backend::throw_if_missing() const {
  if (missing_.empty()) return;
  std::vector<std::string> keys;
  keys.reserve(missing_.size());
  for (const auto& k : missing_) keys.push_back(k.to_string());
  std::string msg = "missing correlator table entries (" + std::to_string(keys.size()) + "):";
  for (const auto& k : keys) msg += "\n  " + k;
  throw EngineError(ErrorKind::missing_table_entry, msg, std::move(keys));
}

Cyclo Backend::g1_base_correlator(const TableKey& raw) const {
  TableKey key = raw;
  key.canonicalize();
  if (!stable(key.genus, key.cycle_type.weighted_size())) return Cyclo::zero();
  auto v = table_->lookup(key);
  if (!v) {
    throw EngineError(ErrorKind::missing_table_entry, "missing table entry " + key.to_string(),
                      {key.to_string()});
  }
  return *v;
}

Series Backend::bracket(int genus, const std::vector<Slot>& slots, const TauVector& tau) const {
  const int cap = config_->truncation_order;
  Series total(config_);
  // Enumerate the insertion types lbar and Novikov degrees, bounded by the
  // filtration budget (each tau_r raises the order by >= ord(tau_r) >= 1).
  std::vector<int> min_order(static_cast<size_t>(tau.max_level()) + 1, 0);
  for (int r = 1; r <= tau.max_level(); ++r) {
    KVector t = tau.at(r);
    min_order[static_cast<size_t>(r)] = t.is_zero() ? -1 : t.filtration_order();
  }
  std::vector<int> lbar_counts(static_cast<size_t>(tau.max_level()) + 1, 0);
  std::function<void(int, int)> enumerate = [&](int level, int used) {
    if (level > tau.max_level()) {
      CycleType lbar;
      Rat weight = 1;
      for (int r = 1; r <= tau.max_level(); ++r) {
        int c = lbar_counts[static_cast<size_t>(r)];
        if (c == 0) continue;
        lbar.add(r, c);
        weight /= rat_factorial(c);
        if (toggles_.cycle_weight_in_brackets) weight /= rat_pow(Rat(r), c);
      }
      const int dmax = config_->novikov_enabled ? cap - used : 0;
      for (int d = 0; d <= dmax; ++d) {
        total += bracket_term(genus, slots, lbar, d, tau, weight);
      }
      return;
    }
    enumerate(level + 1, used);
    if (min_order[static_cast<size_t>(level)] > 0) {
      int ord = min_order[static_cast<size_t>(level)];
      for (int c = 1; used + c * ord <= cap; ++c) {
        lbar_counts[static_cast<size_t>(level)] = c;
        enumerate(level + 1, used + c * ord);
      }
      lbar_counts[static_cast<size_t>(level)] = 0;
    }
  };
  enumerate(1, 0);
  return total;
}

Series Backend::bracket_term(int genus, const std::vector<Slot>& slots, const CycleType& lbar,
                             int degree, const TauVector& tau, const Rat& weight) const {
  Series zero(config_);
  // Full cycle type = input slots + insertions.
  CycleType type = lbar;
  bool all_level_one = lbar.max_length() <= 1;
  for (const auto& s : slots) {
    type.add(s.r, 1);
    if (s.r != 1) all_level_one = false;
  }
  if (!stable(genus, type.weighted_size())) return zero;

  // Assemble the full slot list: contents (exponent, coefficient KVector).
  struct ExpandedSlot {
    int r;
    const LaurentQ* content;
    KVector tau_content;  // used when content == nullptr
  };
  std::vector<ExpandedSlot> full;
  full.reserve(slots.size() + static_cast<size_t>(lbar.total_cycles()));
  for (const auto& s : slots) full.push_back({s.r, &s.content, KVector(basis_, config_)});
  for (int r = 1; r <= lbar.max_length(); ++r) {
    for (int c = 0; c < lbar.count(r); ++c) full.push_back({r, nullptr, tau.at(r)});
  }

  Series weight_series = Series::constant(config_, Cyclo(weight));
  if (degree > 0) {
    MultiIndex qd;
    qd.exponents.assign(config_->variables.size(), 0);
    qd.novikov = degree;
    weight_series = Series::monomial(config_, qd, Cyclo(weight));
  }
  if (weight_series.is_zero()) return zero;

  const bool chi_route = (genus == 0) && all_level_one && basis_->is_point();
  if (chi_route && degree > 0) return zero;  // no positive-degree point maps

  Series total(config_);
  if (chi_route) {
    std::vector<int> exps(full.size(), 0);
    std::function<void(size_t, Series)> walk = [&](size_t i, Series coeff) {
      if (coeff.is_zero()) return;
      if (i == full.size()) {
        Rat v = point_->monomial_correlator(exps);
        if (v != 0) total += coeff.scaled(Cyclo(v));
        return;
      }
      if (full[i].content) {
        for (const auto& [e, kv] : full[i].content->terms()) {
          exps[i] = e;
          walk(i + 1, coeff * kv.scalar());
        }
      } else {
        exps[i] = 0;
        walk(i + 1, coeff * full[i].tau_content.scalar());
      }
    };
    walk(0, weight_series);
    return total;
  }
  // Table route: expand contents into (exponent, basis, coefficient) monomials.
  std::vector<SlotKey> keys(full.size());
  std::function<void(size_t, Series)> walk = [&](size_t i, Series coeff) {
    if (coeff.is_zero()) return;
    if (i == full.size()) {
      TableKey key;
      key.genus = genus;
      key.cycle_type = type;
      key.degree = degree;
      key.slots = keys;
      key.canonicalize();
      auto v = table_->lookup(key);
      if (!v) {
        missing_.insert(key);
        return;
      }
      if (!v->is_zero()) total += coeff.scaled(*v);
      return;
    }
    auto expand_kv = [&](int e, const KVector& kv, const Series& base) {
      for (int alpha = 0; alpha < basis_->rank; ++alpha) {
        const Series& comp = kv.component(alpha);
        if (comp.is_zero()) continue;
        keys[i] = SlotKey{full[i].r, e, alpha};
        walk(i + 1, base * comp);
      }
    };
    if (full[i].content) {
      for (const auto& [e, kv] : full[i].content->terms()) expand_kv(e, kv, coeff);
    } else {
      expand_kv(0, full[i].tau_content, coeff);
    }
  };
  walk(0, weight_series);
  return total;
}

RationalQ Backend::resummed_bracket(int genus, const std::vector<Slot>& slots, size_t resum_slot,
                                    const TauVector& tau) const {
  if (resum_slot >= slots.size()) {
    throw EngineError(ErrorKind::invalid_argument, "resummed_bracket: bad slot index");
  }
  // The resummed slot carries a single exponent-0 content; the engine walks
  // L^k times that class.
  const LaurentQ& rc = slots[resum_slot].content;
  if (!(rc.terms().size() == 1 && rc.terms().begin()->first == 0)) {
    throw EngineError(ErrorKind::invalid_argument,
                      "resummed_bracket: slot content must be a single exponent-0 class");
  }
  KVector base_class = rc.terms().begin()->second;

  std::vector<Series> samples;
  auto sample = [&](int k) {
    std::vector<Slot> moved = slots;
    moved[resum_slot].content = LaurentQ::monomial(k, base_class);
    return bracket(genus, moved, tau);
  };
  auto ensure = [&](size_t m) {
    while (samples.size() < m) samples.push_back(sample(static_cast<int>(samples.size())));
  };

  static const int periods[] = {1, 2, 3, 4, 6, 12};
  const size_t max_samples = 72;
  for (size_t m = 16; m <= max_samples; m += 12) {
    ensure(m);
    for (int period : periods) {
      // Per residue class, Newton forward differences must vanish from some
      // order on, with at least three verifying entries.
      size_t P = static_cast<size_t>(period);
      if (m < 5 * P) continue;
      bool ok = true;
      int max_deg = 0;
      std::vector<std::vector<Series>> newton_coeffs(P);
      for (size_t c = 0; ok && c < P; ++c) {
        std::vector<Series> seq;
        for (size_t i = c; i < m; i += P) seq.push_back(samples[i]);
        std::vector<std::vector<Series>> diffs{seq};
        int degree = -1;
        while (diffs.back().size() >= 2) {
          const auto& prev = diffs.back();
          std::vector<Series> next;
          next.reserve(prev.size() - 1);
          for (size_t i = 0; i + 1 < prev.size(); ++i) next.push_back(prev[i + 1] - prev[i]);
          bool all_zero =
              std::all_of(next.begin(), next.end(), [](const Series& s) { return s.is_zero(); });
          if (all_zero && next.size() >= 3) {
            degree = static_cast<int>(diffs.size()) - 1;
            break;
          }
          if (all_zero) break;  // pattern found but not enough verification terms
          diffs.push_back(std::move(next));
        }
        if (degree < 0) {
          ok = false;
          break;
        }
        std::vector<Series> coeffs;
        for (int j = 0; j <= degree; ++j) coeffs.push_back(diffs[static_cast<size_t>(j)][0]);
        newton_coeffs[c] = std::move(coeffs);
        max_deg = std::max(max_deg, degree);
      }
      if (!ok) continue;
      // Assemble sum_c sum_j N_{c,j} x^{c+Pj} (1-x^P)^{Dmax-j} / (1-x^P)^{Dmax+1}.
      const int D = max_deg;
      ScalarLaurent one_minus_xp;
      one_minus_xp.set(0, Cyclo::one());
      one_minus_xp.set(period, -Cyclo::one());
      std::vector<ScalarLaurent> pow_table(static_cast<size_t>(D) + 1);
      pow_table[0] = ScalarLaurent::constant(Cyclo::one());
      for (int j = 1; j <= D; ++j) pow_table[static_cast<size_t>(j)] = pow_table[static_cast<size_t>(j - 1)] * one_minus_xp;
      LaurentQ num(basis_, config_);
      for (size_t c = 0; c < P; ++c) {
        for (size_t j = 0; j < newton_coeffs[c].size(); ++j) {
          const Series& N = newton_coeffs[c][j];
          if (N.is_zero()) continue;
          LaurentQ piece = LaurentQ::monomial(static_cast<int>(c) + period * static_cast<int>(j),
                                              KVector::unit(basis_, config_).scaled(N));
          num += piece.mul_scalar(pow_table[static_cast<size_t>(D) - j]);
        }
      }
      // (1-x^P)^{D+1} = (-1)^{D+1} prod_t (x - rho_t)^{D+1}, rho_t the P-th roots.
      if ((D + 1) % 2 == 1) num = -num;
      std::map<Cyclo, int, CycloLess> den;
      for (int t = 0; t < period; ++t) {
        den.emplace(Cyclo::zeta_pow((12 / period) * t), D + 1);
      }
      if (num.is_zero()) return RationalQ(LaurentQ(basis_, config_));
      return RationalQ(std::move(num), std::move(den));
    }
  }
  throw EngineError(ErrorKind::stabilization_failure,
                    "resummed_bracket: no quasi-polynomial pattern within the sample bound "
                    "(bug, or table without rational closure)");
}

}  // namespace qkrec
