#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkrec/reconstruct.hpp"

namespace qkrec {

/// One input term: t_{level} gains coefficient scale*variable at q^exponent.
struct SpecTerm {
  int exponent = 0;
  std::string variable;
  Rat scale = 1;
};

struct SpecInput {
  int level = 1;
  std::vector<SpecTerm> terms;
};

/// Parsed run description: variables, inputs, truncation, tables, toggles.
/// Serialization round-trips exactly.
struct RunSpec {
  std::vector<std::string> variables;
  int truncation_order = 2;
  bool novikov = false;
  std::vector<SpecInput> inputs;
  std::vector<std::string> tables;
  Toggles toggles;
  std::optional<std::string> output;

  static RunSpec from_json(const std::string& text);
  static RunSpec load_file(const std::string& path);
  std::string to_json_string() const;

  ConfigPtr make_ring_config() const;
  ReconstructionInput make_input(const BasisPtr& basis) const;
};

}  // namespace qkrec
