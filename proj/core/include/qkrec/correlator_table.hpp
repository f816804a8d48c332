#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkrec/cycle_type.hpp"
#include "qkrec/cyclo.hpp"
#include "qkrec/kvector.hpp"

namespace qkrec {

/// One insertion slot of a stored correlator: cycle length, cotangent
/// exponent, basis index.
struct SlotKey {
  int r = 1;
  int exponent = 0;
  int basis = 0;
  auto operator<=>(const SlotKey&) const = default;
};

/// Canonical key of a stored correlator value. Slots of equal cycle length
/// are sorted (correlators depend only on the cycle type).
struct TableKey {
  int genus = 0;
  CycleType cycle_type;
  int degree = 0;  // Novikov degree
  std::vector<SlotKey> slots;

  void canonicalize();
  bool consistent() const;  // slot counts match the cycle type
  auto operator<=>(const TableKey&) const = default;
  std::string to_string() const;
};

struct TableEntry {
  Cyclo value;
  std::string provenance;
};

struct ValidationReport {
  int string_instances = 0;
  int dilaton_instances = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Validated store of permutation-equivariant correlator values, keyed by
/// genus, cycle type, Novikov degree and per-slot data. Immutable after load.
class CorrelatorTable {
 public:
  CorrelatorTable() : basis_(BasisInfo::point()) {}
  explicit CorrelatorTable(BasisPtr basis) : basis_(std::move(basis)) {}

  static CorrelatorTable from_json(const std::string& text);
  static CorrelatorTable load_file(const std::string& path);
  std::string to_json() const;
  void save_file(const std::string& path) const;

  const BasisPtr& basis() const { return basis_; }
  const std::map<TableKey, TableEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  void insert(TableKey key, Cyclo value, std::string provenance);
  std::optional<Cyclo> lookup(const TableKey& key) const;
  /// Degrees present anywhere in the table (for Novikov enumeration hints).
  std::vector<int> degrees_present() const;

  /// Checks every applicable string instance (all genera) and genus-0
  /// dilaton instance among present entries; unstable keys count as 0.
  ValidationReport validate() const;

  /// FNV-1a over the canonical serialization; stable across platforms.
  std::string checksum() const;

 private:
  BasisPtr basis_;
  std::map<TableKey, TableEntry> entries_;
};

/// Resolve a table path against QKREC_TABLE_PATH (colon-separated) and cwd.
std::string resolve_table_path(const std::string& name);

}  // namespace qkrec
