#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkrec/backend.hpp"

namespace qkrec {

/// Descendant inputs t = (t_1, ..., t_r, ...): Laurent polynomials whose
/// coefficients lie in Lambda_+.
struct ReconstructionInput {
  BasisPtr basis;
  ConfigPtr config;
  std::vector<LaurentQ> t;  // level r at index r-1
  Toggles toggles;

  LaurentQ t_at(int r) const;
  int max_level() const { return static_cast<int>(t.size()); }
  void validate() const;  // coefficients in Lambda_+
};

/// G_{alpha beta} = (phi_alpha, phi_beta) + <<phi_alpha, phi_beta>>_{0,2_1}
/// and its inverse over the local ring.
struct GMatrix {
  std::vector<std::vector<Series>> entries;
  std::vector<std::vector<Series>> inverse;
};

struct TauIterates {
  TauVector tau;
  std::vector<TauVector> history;  // tau^(1), tau^(2), ...
  std::vector<int> gap_orders;     // per iteration, kInfiniteOrder at convergence
  int iterations = 0;
  TauIterates(BasisPtr b, ConfigPtr c) : tau(std::move(b), std::move(c)) {}
};

struct CaseResidues {
  Series at_zero;
  Series at_infinity;
  CaseResidues(ConfigPtr c) : at_zero(c), at_infinity(std::move(c)) {}
};

struct ReconstructionReport {
  int truncation_order = 0;
  std::vector<std::string> variables;
  bool novikov = false;
  Toggles toggles;
  std::string table_checksum;

  std::vector<Series> tau_levels;   // rank-1 scalar per level
  std::vector<LaurentQ> tbar_levels;
  Series f1_tau;
  Series logdet;
  std::map<int, CaseResidues> residues;  // M = 2, 3, 4, 6
  Series total;

  int tau_iterations = 0;
  std::vector<int> tau_gap_orders;
  std::vector<int> tbar_residual_orders;

  ReconstructionReport(ConfigPtr c) : f1_tau(c), logdet(c), total(std::move(c)) {}
  std::string to_json_string() const;
};

/// The reconstruction pipeline for a rank-1 target: S-operator, tau fixed
/// point, t-bar, A_r / Jacobian, y-classes, case assemblies and the full
/// genus-1 evaluation.
class Pipeline {
 public:
  Pipeline(ReconstructionInput input, const CorrelatorTable* table, const PointBackend* point);

  const ReconstructionInput& input() const { return in_; }
  const Backend& backend() const { return backend_; }

  const TauIterates& tau_iterates();
  const TauVector& tau();

  /// G at the R_r-shifted tau (Adams applied): G_r = R_r G.
  GMatrix g_matrix(int r_shift);
  /// S_r applied to a K[q^\pm] input: rational in q with poles at q = 1.
  RationalQ apply_S(const LaurentQ& input, int r_shift);
  /// t-bar_r = [S_r(v + t_r)]_+ - v; checks t-bar_r(1) = 0 in the truncation.
  const LaurentQ& tbar(int r);
  LaurentQ xbar(int r);

  /// Rank-1 A_r and (I - A_r)^{-1} = d tau_r / d t_{r,0}.
  Series a_entry(int r);
  Series jacobian_entry(int r);

  LaurentQ y_class(int r);
  LaurentQ y2l_class();

  /// The rational function F_{1,M}(x), M in {2, 3, 4, 6}.
  RationalQ f1m(int M);

  ReconstructionReport run_reconstruction();

 private:
  TauVector t_map(const TauVector& prev);
  GMatrix g_matrix_at(const TauVector& assignment, int adams_r);
  Slot unit_slot(int r = 1) const;
  KVector unit() const { return KVector::unit(in_.basis, in_.config); }

  ReconstructionInput in_;
  Backend backend_;
  std::optional<TauIterates> tau_;
  std::map<int, LaurentQ> tbar_;
  std::map<int, Series> a_;
};

}  // namespace qkrec
