#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qkrec {

enum class ErrorKind {
  config_mismatch,
  non_unit,
  log_of_non_unit,
  division_failed,
  pole_at_point,
  unrepresentable_pole,
  missing_table_entry,
  non_convergence,
  stabilization_failure,
  parse,
  unstable_query,
  invalid_argument,
};

/// Engine error. `keys` carries canonical table keys for batch reporting
/// when kind == missing_table_entry.
class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, std::string message, std::vector<std::string> keys = {})
      : std::runtime_error(std::move(message)), kind(kind), keys(std::move(keys)) {}

  ErrorKind kind;
  std::vector<std::string> keys;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::config_mismatch: return "config-mismatch";
    case ErrorKind::non_unit: return "non-unit";
    case ErrorKind::log_of_non_unit: return "log-of-non-unit";
    case ErrorKind::division_failed: return "division-failed";
    case ErrorKind::pole_at_point: return "pole-at-point";
    case ErrorKind::unrepresentable_pole: return "unrepresentable-pole";
    case ErrorKind::missing_table_entry: return "missing-table-entry";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::stabilization_failure: return "stabilization-failure";
    case ErrorKind::parse: return "parse";
    case ErrorKind::unstable_query: return "unstable-query";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace qkrec
