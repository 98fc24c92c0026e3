#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fxd/demand.hpp"
#include "fxd/exchange_rate.hpp"

namespace fxd {

/// Which piecewise objective applies at a capacity level.
///   scarce        K < K_Q:          EC / BC / IC bands
///   intermediate  K_Q <= K < K_h:   EU / BU / BC / IC bands
///   ample         K_h <= K < K_t:   EU / BU / BC bands
///   unconstrained K >= K_t:         EU / BU split at I_z only
enum class ObjectiveForm { scarce, intermediate, ample, unconstrained };

std::string_view to_string(ObjectiveForm form) noexcept;

ObjectiveForm objective_form(const MarketParams& params, double K);

struct CapacityOptions {
  /// Multiplier on the expectation term.
  double discount = 1.0;
  /// Integration is truncated at |eps| = tail_cutoff; tails of integrands
  /// that are polynomial in I and 1/I are added analytically.
  double tail_cutoff = 8.0;
  double relative_tolerance = 1e-10;
  /// Coarse evaluations per capacity bracket before golden-section refinement.
  int scan_points = 16;
  double k_tolerance = 1e-9;
};

/// -u K + discount * E[ex-post equilibrium entrant profit at capacity K].
double expected_profit(const MarketParams& params, const GbmModel& model, double K,
                       const CapacityOptions& options = {});

/// d expected_profit / dK for K > 0.
double foc_residual(const MarketParams& params, const GbmModel& model, double K,
                    const CapacityOptions& options = {});

struct CapacityPlan {
  double k_star = 0.0;
  double expected_profit = 0.0;
  double foc_residual = 0.0;
  /// Index into `bracket_edges` of the interval holding k_star.
  int bracket = 0;
  /// Sorted edges {0, K_Q and K_h in order, K_t, K_t + K_Q}.
  std::vector<double> bracket_edges;
  ObjectiveForm objective_form = ObjectiveForm::scarce;
  /// k_star sits on a bracket edge rather than at an interior stationary point.
  bool boundary = false;
};

CapacityPlan optimize_capacity(const MarketParams& params, const GbmModel& model,
                               const CapacityOptions& options = {});

struct CostThresholds {
  /// Unit capacity cost above which k_star <= K_Q.
  std::optional<double> u_t1;
  /// Unit capacity cost above which k_star <= K_h.
  std::optional<double> u_t2;
};

/// Bisects on u for the costs at which k_star(u) crosses K_Q and K_h. A
/// threshold is empty when k_star never crosses that edge for u in
/// [0, 10 alpha_e]. The u field of `params` is ignored.
CostThresholds capacity_cost_thresholds(const MarketParams& params, const GbmModel& model,
                                        const CapacityOptions& options = {});

}  // namespace fxd
