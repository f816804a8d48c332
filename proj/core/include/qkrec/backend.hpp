#pragma once

#include <set>

#include "qkrec/correlator_table.hpp"
#include "qkrec/point_backend.hpp"
#include "qkrec/rationalq.hpp"

namespace qkrec {

/// Engine toggles surfaced in every report.
struct Toggles {
  bool y_sign_plus = false;            // default: the minus convention
  bool cycle_weight_in_brackets = true;
  bool a_insertion_level_r = true;     // A_r insertion from t-bar_r (vs t-bar_1)

  bool operator==(const Toggles&) const = default;
};

/// The auxiliary point tau = (tau_1, ..., tau_r, ...); entries in Lambda_+.
class TauVector {
 public:
  TauVector(BasisPtr basis, ConfigPtr config);

  const BasisPtr& basis() const { return basis_; }
  const ConfigPtr& config() const { return config_; }
  KVector at(int r) const;  // zero beyond stored levels
  void set(int r, KVector v);
  int max_level() const { return static_cast<int>(levels_.size()); }
  bool is_zero() const;
  /// R_r index shift: level k of the result is level r*k of this.
  TauVector shifted(int r) const;
  /// Minimal filtration order of the difference (kInfiniteOrder if equal).
  int gap_order(const TauVector& o) const;
  bool operator==(const TauVector& o) const;

 private:
  BasisPtr basis_;
  ConfigPtr config_;
  std::vector<KVector> levels_;
};

/// One double-bracket insertion: cycle length r and the K[q^\pm]-valued
/// content at the marked points of that cycle.
struct Slot {
  int r = 1;
  LaurentQ content;
};

/// Correlator backend: routes pure level-1 genus-0 queries at the point
/// target to the exact string recursion, everything else to the table.
/// Missing table keys are recorded and reported in batch.
class Backend {
 public:
  Backend(BasisPtr basis, ConfigPtr config, const CorrelatorTable* table,
          const PointBackend* point, Toggles toggles);

  const BasisPtr& basis() const { return basis_; }
  const ConfigPtr& config() const { return config_; }
  const Toggles& toggles() const { return toggles_; }
  const CorrelatorTable* table() const { return table_; }
  const PointBackend* point() const { return point_; }

  /// Double bracket <<slots>>_{g, ell} with tau-insertions, truncated.
  Series bracket(int genus, const std::vector<Slot>& slots, const TauVector& tau) const;

  /// sum_{k >= 0} x^k <<slots with L^k inserted at resum_slot>>, closed into
  /// a rational function of x by quasi-polynomial stabilization (period
  /// dividing 12, three verification terms).
  RationalQ resummed_bracket(int genus, const std::vector<Slot>& slots, size_t resum_slot,
                             const TauVector& tau) const;

  /// Direct genus-1 table lookup; throws missing_table_entry immediately.
  Cyclo g1_base_correlator(const TableKey& key) const;

  const std::set<TableKey>& missing_keys() const { return missing_; }
  void clear_missing() const { missing_.clear(); }
  void throw_if_missing() const;

 private:
  Series bracket_term(int genus, const std::vector<Slot>& slots, const CycleType& lbar,
                      int degree, const TauVector& tau, const Rat& weight) const;

  BasisPtr basis_;
  ConfigPtr config_;
  const CorrelatorTable* table_;
  const PointBackend* point_;
  Toggles toggles_;
  mutable std::set<TableKey> missing_;
};

}  // namespace qkrec
