#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"

namespace fxd {

namespace {

void require_rate(double I) {
  if (!(I > 0.0) || !std::isfinite(I)) {
    throw DomainError("exchange rate must be positive, got " + std::to_string(I));
  }
}

}  // namespace

std::string_view to_string(RegimeLabel regime) noexcept {
  switch (regime) {
    case RegimeLabel::EU:
      return "EU";
    case RegimeLabel::BU:
      return "BU";
    case RegimeLabel::EC:
      return "EC";
    case RegimeLabel::IC:
      return "IC";
    case RegimeLabel::BC:
      return "BC";
  }
  return "?";
}

EntrantPrices entrant_best_response(const MarketParams& params, double I, double p_ii) {
  require_rate(I);
  const double choke = params.entrant_base() + params.theta * p_ii;
  const double interior = (params.export_cost() + I * choke) / (2.0 * I);
  return {0.5 * (params.alpha_e + params.C_e), std::min(interior, choke)};
}

double incumbent_best_response(const MarketParams& params, double p_ei) {
  if (!(p_ei >= 0.0)) {
    throw DomainError("p_ei must be a non-negative price");
  }
  const double interior = 0.5 * (params.incumbent_base() + params.C_i + params.theta * p_ei);
  return std::max(interior, params.C_i);
}

double entrant_profit(const MarketParams& params, double I, double p_ee, double p_ei,
                      double p_ii) {
  require_rate(I);
  return (p_ee - params.C_e) * demand_ee(params, p_ee) +
         (I * p_ei - params.export_cost()) * demand_ei(params, p_ei, p_ii);
}

double incumbent_profit(const MarketParams& params, double p_ii, double p_ei) {
  return (p_ii - params.C_i) * demand_ii(params, p_ii, p_ei);
}

EquilibriumOutcome solve_unconstrained(const MarketParams& params, double I) {
  params.validate();
  require_rate(I);

  const double theta = params.theta;
  const double c = params.export_cost();
  const double A = params.entrant_base();
  const double B = params.incumbent_base();
  const double d4 = 4.0 - theta * theta;
  const double d2 = 2.0 - theta * theta;

  EquilibriumOutcome out;
  out.p_ee = 0.5 * (params.alpha_e + params.C_e);
  out.q_ee = 0.5 * (params.alpha_e - params.C_e);

  // Interior: both firms sell abroad.
  double q_ei = (I * params.foreign_mass() - c * d2) / (I * d4);
  double p_ei = (2.0 * c / I + 2.0 * A + theta * (B + params.C_i)) / d4;
  double p_ii = 0.5 * (B + params.C_i + theta * p_ei);

  if (q_ei <= 0.0) {
    // The entrant stays home and posts its choke price abroad.
    q_ei = 0.0;
    p_ii = (B + params.C_i + theta * A) / d2;
    p_ei = A + theta * p_ii;
  }

  double q_ii = B - p_ii + theta * p_ei;
  if (q_ii < 0.0) {
    // Priced out: the incumbent posts its cost and the entrant is a
    // foreign monopolist facing that price.
    out.incumbent_active = false;
    p_ii = params.C_i;
    q_ii = 0.0;
    const auto reply = entrant_best_response(params, I, p_ii);
    p_ei = reply.p_ei;
    q_ei = std::max(0.0, A + theta * p_ii - p_ei);
  }

  out.p_ei = p_ei;
  out.p_ii = p_ii;
  out.q_ei = q_ei;
  out.q_ii = q_ii;
  out.profit_e = (out.p_ee - params.C_e) * out.q_ee + (I * p_ei - c) * q_ei;
  out.profit_i = (p_ii - params.C_i) * q_ii;
  out.regime = q_ei > 0.0 ? RegimeLabel::BU : RegimeLabel::EU;
  out.allocation = Allocation::slack;
  return out;
}

}  // namespace fxd
