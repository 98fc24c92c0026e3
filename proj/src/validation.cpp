#include "fxd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fxd/capacity.hpp"
#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"
#include "fxd/oracle.hpp"

namespace fxd {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double max_price_gap(const EquilibriumOutcome& a, const EquilibriumOutcome& b) {
  return std::max({std::abs(a.p_ee - b.p_ee), std::abs(a.p_ei - b.p_ei),
                   std::abs(a.p_ii - b.p_ii)});
}

double relative(double value, double reference) {
  const double scale = std::max(std::abs(reference), 1e-12);
  return std::abs(value - reference) / scale;
}

}  // namespace

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationReport run_validation(const Scenario& scenario, const ValidationOptions& options) {
  const MarketParams& p = scenario.market;
  const GbmModel& model = scenario.model;
  p.validate();
  model.validate();

  ValidationReport report;
  const auto add = [&](std::string name, double observed, double tolerance) {
    report.checks.push_back({std::move(name), observed, tolerance, observed <= tolerance});
  };
  const auto guarded = [&](const std::string& name, double tolerance, auto&& body) {
    try {
      add(name, body(), tolerance);
    } catch (const std::exception& e) {
      report.checks.push_back({name + " [" + e.what() + "]",
                               std::numeric_limits<double>::infinity(), tolerance, false});
    }
  };

  const ThresholdSet base = compute_thresholds(p, 0.0);
  const double grid_tol = 2.0 * options.grid_step;

  for (double I : {0.3, 1.0, 3.0}) {
    guarded("unconstrained prices vs grid oracle, I=" + num(I), grid_tol, [&] {
      return max_price_gap(solve_unconstrained(p, I),
                           grid_equilibrium(p, I, kUnlimited, options.grid_step));
    });
  }
  for (double share : {0.3, 0.6}) {
    const double K = share * base.K_t;
    for (double I : {0.3, 1.0, 3.0}) {
      const std::string at = ", I=" + num(I) + ", K=" + num(K);
      guarded("constrained prices vs grid oracle" + at, grid_tol, [&] {
        return max_price_gap(solve_constrained(p, I, K),
                             grid_equilibrium(p, I, K, options.grid_step));
      });
      guarded("shadow price vs finite difference" + at, 1e-5, [&] {
        const double h = 1e-4 * K;
        const double fd =
            (solve_constrained(p, I, K + h).profit_e - solve_constrained(p, I, K - h).profit_e) /
            (2.0 * h);
        return relative(shadow_price(p, I, K), fd);
      });
    }
  }

  const auto threshold_check = [&](ThresholdName which, double K,
                                   const std::optional<double>& analytic) {
    const std::string name =
        std::string(to_string(which)) + " analytic vs bisection, K=" + num(K);
    if (!analytic) {
      guarded(name + " (not applicable)", 0.0, [&] {
        try {
          numeric_threshold(p, K, which);
        } catch (const BoundaryNotFoundError&) {
          return 0.0;
        }
        return 1.0;
      });
      return;
    }
    guarded(name, 1e-6, [&] { return relative(*analytic, numeric_threshold(p, K, which)); });
  };

  threshold_check(ThresholdName::I_z, 0.0, base.I_z);
  threshold_check(ThresholdName::I_v, 0.0, base.I_v);
  const double scarce = 0.5 * std::min(base.K_Q, base.K_h);
  const ThresholdSet at_scarce = compute_thresholds(p, scarce);
  threshold_check(ThresholdName::I_f, scarce, at_scarce.I_f);
  threshold_check(ThresholdName::I_h, scarce, at_scarce.I_h);
  const double partial = 0.5 * (base.K_Q + base.K_t);
  threshold_check(ThresholdName::I_t, partial, compute_thresholds(p, partial).I_t);

  CapacityOptions cap;
  cap.discount = scenario.discount;
  for (double K : {0.5 * base.K_Q, base.K_Q + 0.5 * (base.K_t - base.K_Q)}) {
    guarded("expected profit quadrature vs Monte Carlo (standard errors), K=" + num(K), 3.0, [&] {
      const double quad = expected_profit(p, model, K, cap);
      const MonteCarloEstimate mc =
          mc_expected_profit(p, model, K, options.samples, options.seed, cap);
      if (mc.failures > 0) {
        throw std::runtime_error(std::to_string(mc.failures) + " Monte Carlo solves failed");
      }
      if (mc.standard_error == 0.0) {
        return quad == mc.mean ? 0.0 : std::abs(quad - mc.mean) / (1e-9 * std::abs(quad));
      }
      return std::abs(quad - mc.mean) / mc.standard_error;
    });
  }

  report.diagnostics = closed_form_diagnostics(p, 1.0, scarce);
  return report;
}

}  // namespace fxd
