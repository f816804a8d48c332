#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkrec/reconstruct.hpp"
#include "qkrec/runspec.hpp"

namespace qkrec {

inline constexpr uint64_t kDefaultSeed = 217;

struct SuiteReport {
  std::string name;
  int instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Transport a series into another ring config by variable name; every
/// monomial must be expressible there.
Series series_transport(const Series& s, const ConfigPtr& target);

/// String equation on the exact point backend, random Laurent inputs.
SuiteReport suite_string(uint64_t seed, int draws);
/// Dilaton equation, same sampling.
SuiteReport suite_dilaton(uint64_t seed, int draws);
/// Two-variable WDVV identity at tau_1 = eps, N = 2, point target, compared
/// exactly after clearing denominators.
SuiteReport suite_wdvv();
/// Fixed-point/contraction behaviour on random specs (N <= 3, r_max <= 3).
SuiteReport suite_contraction(const CorrelatorTable& table, uint64_t seed, int count);
/// (I - A_r)^{-1} against the formal-perturbation Jacobian, r in {1,2}.
SuiteReport suite_jacobian(const CorrelatorTable& table);
/// Global residue theorem on random rational functions with 12th-root poles.
SuiteReport suite_residue(uint64_t seed, int count);
/// Closed-form fixed-locus constants and their recursion identities.
SuiteReport suite_dmconst();
/// Case-2 residue identity on the pinned spec, engine outputs on both sides.
SuiteReport suite_case2_residue(const CorrelatorTable& table);

SuiteReport run_suite(const std::string& name, const CorrelatorTable& table, uint64_t seed,
                      int order_hint);
std::vector<std::string> suite_names();

/// Pinned spec of the end-to-end golden run: t_1 = eps (q - 1), N = 2.
RunSpec golden_runspec(const std::string& table_name);
/// Pinned spec of the case-2 identity: t_1 = eps (q - 1), t_2 = eta q, N = 2.
ReconstructionInput case2_input(const BasisPtr& basis);
/// Random contraction-suite inputs (shared with the table generator).
std::vector<ReconstructionInput> contraction_inputs(const BasisPtr& basis, uint64_t seed,
                                                    int count);
/// Jacobian-suite inputs: base and delta-extended copy, per (r, N).
struct JacobianCase {
  int r;
  int truncation;
  ReconstructionInput base;
  ReconstructionInput extended;
  int delta_var;
};
std::vector<JacobianCase> jacobian_cases(const BasisPtr& basis);

}  // namespace qkrec
