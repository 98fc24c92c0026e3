#pragma once

#include <cstdint>
#include <limits>

#include "fxd/capacity.hpp"
#include "fxd/demand.hpp"
#include "fxd/equilibrium.hpp"
#include "fxd/exchange_rate.hpp"

namespace fxd {

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

/// Brute-force equilibrium: alternating exact best responses over a price
/// grid of spacing `grid_step` on [0, 2 max(alpha_e, alpha_i)].
///
/// The entrant enumerates every grid foreign price plus the corner that
/// exhausts K abroad; for each it takes the best home price among the grid
/// points and the point on q_ee + q_ei = K that keep the pair feasible. The
/// incumbent enumerates grid prices at or above C_i. Ties go to the lowest
/// price. Iteration stops at a repeated state; a repeat other than the last
/// state throws CycleError. `lambda` and `capacity_value` are left at 0.
EquilibriumOutcome grid_equilibrium(const MarketParams& params, double I, double K,
                                    double grid_step);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  /// Draws whose equilibrium solve threw; excluded from mean and error.
  std::size_t failures = 0;
};

/// Sample mean of -u K + discount * ex-post entrant profit over n GBM draws.
/// Requires n >= 1000.
MonteCarloEstimate mc_expected_profit(const MarketParams& params, const GbmModel& model, double K,
                                      std::size_t n, std::uint64_t seed,
                                      const CapacityOptions& options = {});

}  // namespace fxd
