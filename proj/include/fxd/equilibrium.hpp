#pragma once

#include <string_view>

#include "fxd/demand.hpp"

namespace fxd {

/// Entrant's market-allocation state.
///   EU  capacity slack, home market only
///   BU  capacity slack, both markets
///   EC  capacity binds, all of it sold at home
///   IC  capacity binds, all of it sold abroad
///   BC  capacity binds, split between the markets
enum class RegimeLabel { EU, BU, EC, IC, BC };

std::string_view to_string(RegimeLabel regime) noexcept;

/// How the entrant's best reply uses its capacity.
enum class Allocation { slack, split, home_only, foreign_only };

struct EquilibriumOutcome {
  double p_ee = 0.0;
  double p_ei = 0.0;
  double p_ii = 0.0;
  double q_ee = 0.0;
  double q_ei = 0.0;
  double q_ii = 0.0;
  /// Home currency; foreign revenue converted at the realised rate.
  double profit_e = 0.0;
  /// Foreign currency.
  double profit_i = 0.0;
  /// KKT multiplier of q_ee + q_ei <= K in the entrant's own problem
  /// (rival price held fixed).
  double lambda = 0.0;
  /// d profit_e / dK along the equilibrium: lambda plus the effect of
  /// capacity on the incumbent's price.
  double capacity_value = 0.0;
  RegimeLabel regime = RegimeLabel::EU;
  Allocation allocation = Allocation::slack;
  /// False when the incumbent is priced out and posts its unit cost.
  bool incumbent_active = true;
  int iterations = 0;
};

struct EntrantPrices {
  double p_ee = 0.0;
  double p_ei = 0.0;
};

/// Unconstrained best reply. The foreign price is the interior optimum
/// ((C_e + s) + I((1 - phi) alpha_i + theta p_ii)) / (2I) while that sells a
/// positive quantity; otherwise the entrant posts the choke price at which
/// its foreign demand is exactly zero.
EntrantPrices entrant_best_response(const MarketParams& params, double I, double p_ii);

/// (phi alpha_i + C_i + theta p_ei) / 2, floored at C_i (a priced-out
/// incumbent posts its unit cost).
double incumbent_best_response(const MarketParams& params, double p_ei);

/// Capacity-constrained best reply of the entrant to p_ii.
struct EntrantReply {
  double p_ee = 0.0;
  double p_ei = 0.0;
  double q_ee = 0.0;
  double q_ei = 0.0;
  double lambda = 0.0;
  Allocation allocation = Allocation::slack;
};

/// Best reply subject to q_ee + q_ei <= capacity. Pass +infinity for an
/// uncapacitated entrant.
EntrantReply entrant_constrained_reply(const MarketParams& params, double I, double p_ii,
                                       double capacity);

/// Simultaneous-pricing equilibrium with unlimited entrant capacity.
EquilibriumOutcome solve_unconstrained(const MarketParams& params, double I);

/// Equilibrium with q_ee + q_ei <= K. Throws ConvergenceError if the
/// damped fixed-point iteration does not settle within the cap.
EquilibriumOutcome solve_constrained(const MarketParams& params, double I, double K);

/// Marginal equilibrium value of capacity, d profit_e / dK; 0 when slack.
double shadow_price(const MarketParams& params, double I, double K);

/// Entrant profit when all of K is sold at home: (alpha_e - C_e - K) K.
double profit_ec(const MarketParams& params, double K);

/// Entrant profit when all of K is sold abroad against a best-responding
/// incumbent.
double profit_ic(const MarketParams& params, double I, double K);

/// Entrant objective at arbitrary prices (home currency).
double entrant_profit(const MarketParams& params, double I, double p_ee, double p_ei, double p_ii);

/// Incumbent objective at arbitrary prices (foreign currency).
double incumbent_profit(const MarketParams& params, double p_ii, double p_ei);

struct FixedPointOptions {
  double damping = 0.5;
  double tolerance = 1e-10;
  int max_iterations = 100000;
};

EquilibriumOutcome solve_constrained(const MarketParams& params, double I, double K,
                                     const FixedPointOptions& options);

}  // namespace fxd
