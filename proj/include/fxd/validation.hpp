#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fxd/scenario.hpp"
#include "fxd/thresholds.hpp"

namespace fxd {

struct CheckResult {
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<Diagnostic> diagnostics;
  bool passed() const noexcept;
};

struct ValidationOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 200000;
  double grid_step = 1e-3;
};

/// Cross-checks the closed forms and solvers against the brute-force oracle,
/// the quadrature against Monte Carlo, and the analytic thresholds against
/// bisection, all for one scenario.
ValidationReport run_validation(const Scenario& scenario, const ValidationOptions& options = {});

}  // namespace fxd
