#pragma once

#include <map>
#include <set>

#include "qkrec/correlator_table.hpp"

namespace qkrec {

/// Model values for the bundled point table. Equivariant genus-0 entries are
/// zero; genus-1 entries follow the string equation downward from constant
/// seed families. An optional period-2 component on the level-1 seed builds
/// synthetic tables whose resummations have a pole at -1.
class PointTableModel {
 public:
  Rat seed_level1 = 1;           // <L^k>_{1,(1)_1}
  Rat seed_level1_period2 = 0;   // + (-1)^k * this
  Rat seed_12 = Rat(1, 4);       // families bottoming at one 2-cycle
  Rat seed_123 = Rat(1, 6);      // families bottoming at a 2-cycle + 3-cycle

  Cyclo value(const TableKey& key) const;
  std::string provenance(const TableKey& key) const;

 private:
  Rat genus1_value(const TableKey& key) const;
  mutable std::map<TableKey, Rat> memo_;
};

/// Add model entries for every key in `missing`.
void extend_with_model(CorrelatorTable& table, const std::set<TableKey>& missing,
                       const PointTableModel& model);

/// Generate the bundled point table: run the pinned and suite workloads in
/// missing-key collection mode until the key set closes, then validate.
CorrelatorTable generate_point_table(const PointTableModel& model, int max_rounds = 8);

}  // namespace qkrec
