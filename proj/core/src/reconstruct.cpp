#include "qkrec/reconstruct.hpp"

#include <json.hpp>

#include "qkrec/errors.hpp"

namespace qkrec {

using nlohmann::json;

LaurentQ ReconstructionInput::t_at(int r) const {
  if (r < 1) throw EngineError(ErrorKind::invalid_argument, "input level must be >= 1");
  if (r > max_level()) return LaurentQ(basis, config);
  return t[static_cast<size_t>(r - 1)];
}

void ReconstructionInput::validate() const {
  if (basis->rank != 1) {
    throw EngineError(ErrorKind::invalid_argument,
                      "reconstruction pipeline computes rank-1 targets only");
  }
  for (const auto& tr : t) {
    for (const auto& [e, c] : tr.terms()) {
      if (c.filtration_order() < 1) {
        throw EngineError(ErrorKind::invalid_argument,
                          "input coefficients must lie in Lambda_+");
      }
    }
  }
}

Pipeline::Pipeline(ReconstructionInput input, const CorrelatorTable* table,
                   const PointBackend* point)
    : in_(std::move(input)), backend_(in_.basis, in_.config, table, point, in_.toggles) {
  in_.validate();
}

Slot Pipeline::unit_slot(int r) const {
  return Slot{r, LaurentQ::monomial(0, unit())};
}

GMatrix Pipeline::g_matrix_at(const TauVector& assignment, int adams_r) {
  const int rank = in_.basis->rank;
  GMatrix g;
  g.entries.assign(static_cast<size_t>(rank), {});
  for (int a = 0; a < rank; ++a) {
    for (int b = 0; b < rank; ++b) {
      Series entry = Series::constant(in_.config, Cyclo(in_.basis->pairing[static_cast<size_t>(a)][static_cast<size_t>(b)]));
      Slot sa{1, LaurentQ::monomial(0, KVector::basis_vector(in_.basis, in_.config, a))};
      Slot sb{1, LaurentQ::monomial(0, KVector::basis_vector(in_.basis, in_.config, b))};
      entry += backend_.bracket(0, {sa, sb}, assignment);
      if (adams_r > 1) entry = entry.adams_novikov(adams_r);
      g.entries[static_cast<size_t>(a)].push_back(std::move(entry));
    }
  }
  // G = P (I + P^{-1} C) with C in Lambda_+; invert by the Neumann series.
  std::vector<std::vector<Series>> x(static_cast<size_t>(rank));
  for (int a = 0; a < rank; ++a) {
    for (int b = 0; b < rank; ++b) {
      Series acc(in_.config);
      for (int c = 0; c < rank; ++c) {
        Series diff = g.entries[static_cast<size_t>(c)][static_cast<size_t>(b)] -
                      Series::constant(in_.config, Cyclo(in_.basis->pairing[static_cast<size_t>(c)][static_cast<size_t>(b)]));
        acc += diff.scaled(Cyclo(in_.basis->pairing_inverse[static_cast<size_t>(a)][static_cast<size_t>(c)]));
      }
      if (acc.filtration_order() < 1) {
        throw EngineError(ErrorKind::invalid_argument,
                          "G correction is not in Lambda_+ (malformed pairing)");
      }
      x[static_cast<size_t>(a)].push_back(-acc);
    }
  }
  // inverse = (sum_k X^k) P^{-1}
  auto mat_mul = [&](const std::vector<std::vector<Series>>& m1,
                     const std::vector<std::vector<Series>>& m2) {
    std::vector<std::vector<Series>> out(static_cast<size_t>(rank));
    for (int a = 0; a < rank; ++a) {
      for (int b = 0; b < rank; ++b) {
        Series acc(in_.config);
        for (int c = 0; c < rank; ++c) {
          acc += m1[static_cast<size_t>(a)][static_cast<size_t>(c)] * m2[static_cast<size_t>(c)][static_cast<size_t>(b)];
        }
        out[static_cast<size_t>(a)].push_back(std::move(acc));
      }
    }
    return out;
  };
  std::vector<std::vector<Series>> geom(static_cast<size_t>(rank));
  std::vector<std::vector<Series>> power(static_cast<size_t>(rank));
  for (int a = 0; a < rank; ++a) {
    for (int b = 0; b < rank; ++b) {
      Series id(in_.config);
      if (a == b) id = Series::constant(in_.config, Cyclo::one());
      geom[static_cast<size_t>(a)].push_back(id);
      power[static_cast<size_t>(a)].push_back(id);
    }
  }
  for (int k = 1; k <= in_.config->truncation_order; ++k) {
    power = mat_mul(power, x);
    bool all_zero = true;
    for (int a = 0; a < rank && all_zero; ++a) {
      for (int b = 0; b < rank && all_zero; ++b) {
        if (!power[static_cast<size_t>(a)][static_cast<size_t>(b)].is_zero()) all_zero = false;
      }
    }
    if (all_zero) break;
    for (int a = 0; a < rank; ++a) {
      for (int b = 0; b < rank; ++b) {
        geom[static_cast<size_t>(a)][static_cast<size_t>(b)] += power[static_cast<size_t>(a)][static_cast<size_t>(b)];
      }
    }
  }
  g.inverse.assign(static_cast<size_t>(rank), {});
  for (int a = 0; a < rank; ++a) {
    for (int b = 0; b < rank; ++b) {
      Series acc(in_.config);
      for (int c = 0; c < rank; ++c) {
        acc += geom[static_cast<size_t>(a)][static_cast<size_t>(c)].scaled(
            Cyclo(in_.basis->pairing_inverse[static_cast<size_t>(c)][static_cast<size_t>(b)]));
      }
      if (adams_r > 1) acc = acc.adams_novikov(adams_r);
      g.inverse[static_cast<size_t>(a)].push_back(std::move(acc));
    }
  }
  return g;
}

TauVector Pipeline::t_map(const TauVector& prev) {
  TauVector next(in_.basis, in_.config);
  for (int r = 1; r <= in_.max_level(); ++r) {
    LaurentQ tr = in_.t_at(r);
    KVector val = tr.is_zero() ? KVector(in_.basis, in_.config) : tr.eval_at(Cyclo::one());
    if (!tr.is_zero()) {
      LaurentQ ldt = tr.d_operator().shifted(1);  // L * D t_r(L)
      if (!ldt.is_zero()) {
        TauVector sh = prev.shifted(r);
        GMatrix g = g_matrix_at(sh, 1);
        Series b = backend_.bracket(0, {Slot{1, ldt}, unit_slot()}, sh);
        Series comp = b * g.inverse[0][0];
        if (r > 1) comp = comp.adams_novikov(r);
        val += unit().scaled(comp);
      }
    }
    if (!val.is_zero()) next.set(r, val);
  }
  return next;
}

const TauIterates& Pipeline::tau_iterates() {
  if (tau_) return *tau_;
  TauIterates data(in_.basis, in_.config);
  TauVector cur(in_.basis, in_.config);
  const int max_iter = in_.config->truncation_order + 2;
  bool converged = false;
  for (int i = 0; i < max_iter; ++i) {
    TauVector next = t_map(cur);
    ++data.iterations;
    int gap = next.gap_order(cur);
    data.gap_orders.push_back(gap);
    data.history.push_back(next);
    if (gap == kInfiniteOrder) {
      converged = true;
      cur = std::move(next);
      break;
    }
    cur = std::move(next);
  }
  if (!converged) {
    throw EngineError(ErrorKind::non_convergence,
                      "tau fixed point did not converge within N+2 iterations");
  }
  data.tau = std::move(cur);
  tau_ = std::move(data);
  return *tau_;
}

const TauVector& Pipeline::tau() { return tau_iterates().tau; }

GMatrix Pipeline::g_matrix(int r_shift) {
  TauVector sh = tau().shifted(r_shift);
  return g_matrix_at(sh, r_shift);
}

RationalQ Pipeline::apply_S(const LaurentQ& input, int r_shift) {
  TauVector sh = tau().shifted(r_shift);
  GMatrix g = g_matrix_at(sh, 1);  // adams applied at the end to the whole value
  RationalQ acc{LaurentQ(in_.basis, in_.config)};
  for (const auto& [e, coeff] : input.terms()) {
    // Pairing part: (coeff, phi_0) G^{00} phi_0 at rank 1.
    Series pairing_part = coeff.pair_with_basis(0);
    RationalQ term{LaurentQ::monomial(e, unit().scaled(pairing_part))};
    // Descendant part: sum_k q^{-k} << L^k coeff, phi_0 >>.
    Slot content{1, LaurentQ::monomial(0, coeff)};
    RationalQ resum = backend_.resummed_bracket(0, {content, unit_slot()}, 0, sh);
    if (!resum.is_zero()) {
      term += resum.subst_inverse_power(1).shifted(e);
    }
    acc += term;
  }
  acc = acc.scaled(g.inverse[0][0]);
  if (r_shift > 1) acc = acc.adams_novikov(r_shift);
  return acc;
}

const LaurentQ& Pipeline::tbar(int r) {
  auto it = tbar_.find(r);
  if (it != tbar_.end()) return it->second;
  LaurentQ v = LaurentQ::dilaton_shift(in_.basis, in_.config);
  LaurentQ vt = v + in_.t_at(r);
  RationalQ s = apply_S(vt, r);
  LaurentQ lp = s.laurent_part();
  LaurentQ tb = lp - v;
  if (!tb.eval_at(Cyclo::one()).is_zero()) {
    throw EngineError(ErrorKind::non_convergence,
                      "t-bar(1) != 0 mod Lambda_+^{N+1}: fixed point failed at level " +
                          std::to_string(r));
  }
  return tbar_.emplace(r, std::move(tb)).first->second;
}

LaurentQ Pipeline::xbar(int r) {
  return LaurentQ::dilaton_shift(in_.basis, in_.config) + tbar(r);
}

Series Pipeline::a_entry(int r) {
  auto it = a_.find(r);
  if (it != a_.end()) return it->second;
  const LaurentQ& tb = in_.toggles.a_insertion_level_r ? tbar(r) : tbar(1);
  KVector slope = RationalQ(tb).jet_at_root(Cyclo::one()).derivative;
  Series a(in_.config);
  if (!slope.is_zero()) {
    TauVector sh = tau().shifted(r);
    GMatrix g = g_matrix_at(sh, 1);
    Series b = backend_.bracket(
        0, {unit_slot(), Slot{1, LaurentQ::monomial(0, slope)}, unit_slot()}, sh);
    a = b * g.inverse[0][0];
    if (r > 1) a = a.adams_novikov(r);
  }
  if (a.filtration_order() < 1) {
    throw EngineError(ErrorKind::invalid_argument, "A_r entry must lie in Lambda_+");
  }
  a_.emplace(r, a);
  return a;
}

Series Pipeline::jacobian_entry(int r) {
  Series a = a_entry(r);
  Series acc = Series::constant(in_.config, Cyclo::one());
  Series power = Series::constant(in_.config, Cyclo::one());
  for (int k = 1; k <= in_.config->truncation_order; ++k) {
    power = power * a;
    if (power.is_zero()) break;
    acc += power;
  }
  return acc;
}

LaurentQ Pipeline::y_class(int r) {
  LaurentQ xb1 = xbar(1);
  Series mid_scalar = jacobian_entry(r) - Series::constant(in_.config, Cyclo::one());
  LaurentQ result = xb1;
  if (mid_scalar.is_zero()) return result;
  KVector mid = unit().scaled(mid_scalar);
  GMatrix g = g_matrix_at(tau(), 1);  // G_1
  const Cyclo sign = in_.toggles.y_sign_plus ? Cyclo::one() : -Cyclo::one();
  for (const auto& [e, coeff] : xb1.terms()) {
    Series b = backend_.bracket(
        0, {unit_slot(), Slot{r, LaurentQ::monomial(0, mid)}, Slot{1, LaurentQ::monomial(0, coeff)}},
        tau());
    Series total = (b * g.inverse[0][0]).scaled(sign);
    result += LaurentQ::monomial(e, unit().scaled(total));
  }
  return result;
}

LaurentQ Pipeline::y2l_class() {
  LaurentQ xb1 = xbar(1);
  RationalQ tn = t2_new_transform(tbar(2));
  LaurentQ result = xb1;
  if (tn.is_zero()) return result;
  const LaurentQ& tnl = tn.as_laurent();
  GMatrix g = g_matrix_at(tau(), 1);
  const Cyclo sign = in_.toggles.y_sign_plus ? Cyclo::one() : -Cyclo::one();
  for (const auto& [e1, m] : tnl.terms()) {
    for (const auto& [e2, coeff] : xb1.terms()) {
      Series b = backend_.bracket(
          0,
          {unit_slot(), Slot{2, LaurentQ::monomial(0, m)}, Slot{1, LaurentQ::monomial(0, coeff)}},
          tau());
      Series total = (b * g.inverse[0][0]).scaled(sign);
      result += LaurentQ::monomial(e1 + e2, unit().scaled(total));
    }
  }
  return result;
}

RationalQ Pipeline::f1m(int M) {
  auto inv = [&](const LaurentQ& t, int r) {
    return RationalQ(t).subst_inverse_power(r);
  };
  switch (M) {
    case 2: {
      RationalQ a = inv(y2l_class(), 1);
      RationalQ b = inv(y_class(2), 1);
      RationalQ resum = backend_.resummed_bracket(
          1, {unit_slot(), unit_slot(), unit_slot(), unit_slot()}, 0, tau());
      return (a * b * b * b * resum).scaled(Cyclo(Rat(1, 24)));
    }
    case 3: {
      RationalQ a = inv(y_class(3), 1);
      RationalQ b = inv(xbar(1), 1);
      RationalQ resum =
          backend_.resummed_bracket(1, {unit_slot(), unit_slot(), unit_slot()}, 0, tau());
      return (a * b * b * resum).scaled(Cyclo(Rat(1, 6)));
    }
    case 4: {
      RationalQ a = inv(y_class(4), 1);
      RationalQ b = inv(xbar(1), 1);
      RationalQ c = inv(xbar(2), 2);
      RationalQ resum =
          backend_.resummed_bracket(1, {unit_slot(), unit_slot(), unit_slot(2)}, 0, tau());
      return (a * b * c * resum).scaled(Cyclo(Rat(1, 4)));
    }
    case 6: {
      RationalQ a = inv(y_class(6), 1);
      RationalQ b = inv(xbar(2), 2);
      RationalQ c = inv(xbar(3), 3);
      RationalQ resum =
          backend_.resummed_bracket(1, {unit_slot(), unit_slot(2), unit_slot(3)}, 0, tau());
      return (a * b * c * resum).scaled(Cyclo(Rat(1, 6)));
    }
    default:
      throw EngineError(ErrorKind::invalid_argument, "M must be one of 2, 3, 4, 6");
  }
}

ReconstructionReport Pipeline::run_reconstruction() {
  backend_.clear_missing();
  ReconstructionReport report(in_.config);
  report.truncation_order = in_.config->truncation_order;
  report.variables = in_.config->variables;
  report.novikov = in_.config->novikov_enabled;
  report.toggles = in_.toggles;
  report.table_checksum = backend_.table()->checksum();

  const TauIterates& ti = tau_iterates();
  report.tau_iterations = ti.iterations;
  report.tau_gap_orders = ti.gap_orders;
  for (int r = 1; r <= ti.tau.max_level(); ++r) {
    report.tau_levels.push_back(ti.tau.at(r).scalar());
  }
  const int tbar_levels = std::max(3, in_.max_level());
  for (int r = 1; r <= tbar_levels; ++r) {
    const LaurentQ& tb = tbar(r);
    report.tbar_levels.push_back(tb);
    report.tbar_residual_orders.push_back(tb.eval_at(Cyclo::one()).filtration_order());
  }

  report.f1_tau = backend_.bracket(1, {}, tau());
  report.logdet = jacobian_entry(1).log_unit().scaled(Cyclo(Rat(1, 24)));

  Series total = report.f1_tau + report.logdet;
  for (int M : {2, 3, 4, 6}) {
    RationalQ f = f1m(M);
    CaseResidues res(in_.config);
    res.at_zero = f.residue_at(Cyclo::zero()).scalar();
    res.at_infinity = f.residue_at_infinity().scalar();
    total += res.at_zero + res.at_infinity;
    report.residues.emplace(M, std::move(res));
  }
  report.total = std::move(total);
  backend_.throw_if_missing();
  return report;
}

namespace {

json series_to_json(const Series& s) {
  json terms = json::array();
  for (const auto& [idx, c] : s.terms()) {
    json t;
    t["exponents"] = idx.exponents;
    if (idx.novikov != 0) t["novikov"] = idx.novikov;
    t["value"] = c.to_string();
    terms.push_back(t);
  }
  return terms;
}

json laurent_to_json(const LaurentQ& l) {
  json terms = json::array();
  for (const auto& [e, kv] : l.terms()) {
    json t;
    t["q_exponent"] = e;
    json comps = json::array();
    for (int a = 0; a < kv.rank(); ++a) comps.push_back(series_to_json(kv.component(a)));
    t["components"] = comps;
    terms.push_back(t);
  }
  return terms;
}

json order_to_json(int order) {
  if (order == kInfiniteOrder) return "inf";
  return order;
}

}  // namespace

std::string ReconstructionReport::to_json_string() const {
  json doc;
  doc["schema"] = "qkrec-report-v1";
  doc["truncation_order"] = truncation_order;
  doc["variables"] = variables;
  doc["novikov"] = novikov;
  doc["toggles"] = {{"y_sign", toggles.y_sign_plus ? "plus" : "case2-minus"},
                    {"cycle_weight_in_brackets", toggles.cycle_weight_in_brackets},
                    {"a_insertion", toggles.a_insertion_level_r ? "level_r" : "level_1"}};
  doc["table_checksum"] = table_checksum;
  json tau_json = json::array();
  for (const auto& s : tau_levels) tau_json.push_back(series_to_json(s));
  doc["tau"] = tau_json;
  json tbar_json = json::array();
  for (const auto& t : tbar_levels) tbar_json.push_back(laurent_to_json(t));
  doc["tbar"] = tbar_json;
  doc["f1_tau"] = series_to_json(f1_tau);
  doc["logdet"] = series_to_json(logdet);
  json res = json::object();
  for (const auto& [M, r] : residues) {
    res["M" + std::to_string(M)] = {{"at_zero", series_to_json(r.at_zero)},
                                    {"at_infinity", series_to_json(r.at_infinity)}};
  }
  doc["residues"] = res;
  doc["total"] = series_to_json(total);
  json gaps = json::array();
  for (int g : tau_gap_orders) gaps.push_back(order_to_json(g));
  json residuals = json::array();
  for (int g : tbar_residual_orders) residuals.push_back(order_to_json(g));
  doc["diagnostics"] = {{"tau_iterations", tau_iterations},
                        {"tau_gap_orders", gaps},
                        {"tbar_residual_orders", residuals}};
  return doc.dump(2);
}

}  // namespace qkrec
