#pragma once

#include <string>
#include <vector>

#include "cll/config.hpp"

namespace cll {

struct CheckResult {
  std::string name;
  double residual = 0.0;  // measured worst-case defect
  double tol = 0.0;       // pinned threshold the residual is held against
  bool pass = false;
  std::string detail;
};

// The acceptance checks: every structural claim exercised at desk scale with
// its threshold pinned in code. Deterministic (fixed seeds).
std::vector<CheckResult> run_acceptance(const RunConfig& cfg);

// Acceptance plus module-level spot invariants; backs the `verify` CLI.
std::vector<CheckResult> run_verify(const RunConfig& cfg);

}  // namespace cll
