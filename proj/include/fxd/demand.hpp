#pragma once

namespace fxd {

/// Demand, cost and competition constants of the two-market game.
///
/// The entrant sells at home (monopoly, demand alpha_e - p_ee) and abroad,
/// where it competes with the incumbent for a market of potential alpha_i
/// split by the preference share phi. Foreign prices and the incumbent's
/// cost C_i are in foreign currency; C_e, s and u are in home currency.
struct MarketParams {
  double alpha_e = 0.0;
  double alpha_i = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double C_e = 0.0;
  double C_i = 0.0;
  double s = 0.0;
  double u = 0.0;

  /// Checked construction. Throws DomainError naming the offending field.
  static MarketParams create(double alpha_e, double alpha_i, double phi, double theta, double C_e,
                             double C_i, double s, double u);

  /// Throws DomainError unless every field is in range and both markets are
  /// viable without competition (alpha_e > C_e, phi * alpha_i > C_i).
  void validate() const;

  /// Entrant's delivered unit cost abroad, C_e + s.
  double export_cost() const noexcept { return C_e + s; }
  /// Entrant's share of the foreign demand potential, (1 - phi) alpha_i.
  double entrant_base() const noexcept { return (1.0 - phi) * alpha_i; }
  /// Incumbent's demand potential, phi alpha_i.
  double incumbent_base() const noexcept { return phi * alpha_i; }
  /// alpha_i (2 - 2 phi + theta phi) + C_i theta; recurs in every threshold.
  double foreign_mass() const noexcept;
};

/// D_ee = alpha_e - p_ee, clamped at zero.
double demand_ee(const MarketParams& params, double p_ee);
/// D_ei = (1 - phi) alpha_i - p_ei + theta p_ii, clamped at zero.
double demand_ei(const MarketParams& params, double p_ei, double p_ii);
/// D_ii = phi alpha_i - p_ii + theta p_ei, clamped at zero.
double demand_ii(const MarketParams& params, double p_ii, double p_ei);

}  // namespace fxd
