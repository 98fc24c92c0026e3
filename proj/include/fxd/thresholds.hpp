#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fxd/demand.hpp"
#include "fxd/equilibrium.hpp"

namespace fxd {

/// Exchange-rate and capacity thresholds for one (params, K).
/// An empty optional means "not applicable" (the defining denominator is
/// not positive, or the boundary cannot occur).
struct ThresholdSet {
  /// Export break-even rate; independent of K.
  std::optional<double> I_z;
  /// Rate above which the incumbent is priced out; only when C_i > C_v.
  std::optional<double> I_v;
  /// Rate at which the unconstrained plan exactly exhausts K.
  std::optional<double> I_t;
  /// Rate above which the entrant abandons its home market under scarcity.
  std::optional<double> I_h;
  /// Rate above which the entrant starts exporting under scarcity.
  std::optional<double> I_f;
  double C_v = 0.0;
  /// Unconstrained home quantity (alpha_e - C_e) / 2.
  double K_Q = 0.0;
  /// Capacity at and above which the home market is always served.
  double K_h = 0.0;
  /// Capacity at and above which the constraint never binds.
  double K_t = 0.0;
};

enum class ThresholdName { I_z, I_v, I_t, I_h, I_f };

std::string_view to_string(ThresholdName name) noexcept;

/// Denominator used for I_h. `alpha_i_mass` is the form consistent with the
/// K_h bound; `alpha_e_mass` puts alpha_e in place of alpha_i and is kept
/// only for comparison.
enum class IhForm { alpha_i_mass, alpha_e_mass };

ThresholdSet compute_thresholds(const MarketParams& params, double K);

/// I_h under the requested denominator form; empty when not applicable.
std::optional<double> home_exit_rate(const MarketParams& params, double K, IhForm form);

/// Incumbent exit rate from the raw formula, without the C_i > C_v gate or
/// parameter validation. Non-positive or infinite when no exit occurs.
double incumbent_exit_rate_raw(const MarketParams& params) noexcept;

/// Locates the named boundary by bisection on I using the equilibrium
/// solvers. Throws BoundaryNotFoundError when the defining event never flips.
double numeric_threshold(const MarketParams& params, double K, ThresholdName which);

/// Five-way classification from the analytic thresholds. At I = I_f or
/// I = I_h the split regime BC is returned.
RegimeLabel classify_regime(const MarketParams& params, double I, double K);

struct IntervalCheck {
  std::string statement;
  double K_lo = 0.0;
  double K_hi = 0.0;
  int points = 0;
  int violations = 0;
  /// K of the first violating grid point, if any.
  std::optional<double> first_violation;
  bool holds() const noexcept { return points > 0 && violations == 0; }
};

enum class OrderingCase { home_first, foreign_first, unclassified };

struct OrderingReport {
  /// home_first: K_Q < K_h < K_t. foreign_first: K_h < K_Q < K_t.
  OrderingCase ordering = OrderingCase::unclassified;
  double K_Q = 0.0;
  double K_h = 0.0;
  double K_t = 0.0;
  /// The inequalities claimed for this ordering, checked on each interval.
  std::vector<IntervalCheck> stated;
  /// Orderings of the thresholds that actually bound the regimes.
  std::vector<IntervalCheck> supplementary;
  bool stated_hold() const noexcept;
};

/// Determines the capacity-threshold ordering and checks the threshold
/// inequalities on `points` cell midpoints of each K-interval.
OrderingReport threshold_ordering_case(const MarketParams& params, int points = 50);

/// A named disagreement between an alternate closed form and the solver.
struct Diagnostic {
  std::string name;
  double reference = 0.0;
  double alternate = 0.0;
  double relative_gap = 0.0;
  bool agrees = false;
};

/// Compares alternate closed forms (I_h with alpha_e mass, the split-regime
/// best-reply formulas, the incumbent reply with phi alpha_e) against the
/// solver at (I, K). Never throws for valid inputs.
std::vector<Diagnostic> closed_form_diagnostics(const MarketParams& params, double I, double K);

}  // namespace fxd
