#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"

namespace fxd {

namespace {

void require_inputs(double I, double K) {
  if (!(I > 0.0) || !std::isfinite(I)) {
    throw DomainError("exchange rate must be positive, got " + std::to_string(I));
  }
  if (!(K >= 0.0)) {
    throw DomainError("capacity must be non-negative, got " + std::to_string(K));
  }
}

// Slope of the equilibrium foreign price in K for a fixed active set, with
// the incumbent on its interior reaction p_ii = (B + C_i + theta p_ei) / 2.
double foreign_price_slope(Allocation allocation, double theta, double I) {
  const double t2 = theta * theta;
  switch (allocation) {
    case Allocation::split:
      return -4.0 / (4.0 * (1.0 + I) - t2 * (2.0 + I));
    case Allocation::foreign_only:
      return -2.0 / (2.0 - t2);
    case Allocation::home_only:
    case Allocation::slack:
      return 0.0;
  }
  return 0.0;
}

// d reaction / d p_ii on the piece containing p_ii.
double reaction_slope(const MarketParams& params, double I, double p_ii, double K) {
  const EntrantReply reply = entrant_constrained_reply(params, I, p_ii, K);
  const double p_ei = std::max(0.0, reply.p_ei);
  if (incumbent_best_response(params, p_ei) <= params.C_i) {
    return 0.0;
  }
  double foreign = params.theta;  // d p_ei / d p_ii
  if (reply.q_ei > 0.0) {
    if (reply.allocation == Allocation::slack) {
      foreign = 0.5 * params.theta;
    } else if (reply.allocation == Allocation::split) {
      foreign = params.theta * (2.0 + I) / (2.0 * (1.0 + I));
    }
  }
  return 0.5 * params.theta * foreign;
}

RegimeLabel regime_of(const EntrantReply& reply) {
  switch (reply.allocation) {
    case Allocation::slack:
      return reply.q_ei > 0.0 ? RegimeLabel::BU : RegimeLabel::EU;
    case Allocation::split:
      return RegimeLabel::BC;
    case Allocation::home_only:
      return RegimeLabel::EC;
    case Allocation::foreign_only:
      return RegimeLabel::IC;
  }
  return RegimeLabel::EU;
}

}  // namespace

EntrantReply entrant_constrained_reply(const MarketParams& params, double I, double p_ii,
                                       double capacity) {
  require_inputs(I, capacity);
  const double choke = params.entrant_base() + params.theta * p_ii;
  // Marginal revenue net of cost at zero quantity, per market, in home currency.
  const double home_margin = params.alpha_e - params.C_e;
  const double foreign_margin = I * choke - params.export_cost();

  const auto home_q = [&](double lambda) { return std::max(0.0, 0.5 * (home_margin - lambda)); };
  const auto foreign_q = [&](double lambda) {
    return std::max(0.0, (foreign_margin - lambda) / (2.0 * I));
  };

  EntrantReply r;
  if (home_q(0.0) + foreign_q(0.0) <= capacity) {
    r.allocation = Allocation::slack;
    r.lambda = 0.0;
  } else {
    const double both = (I * home_margin + foreign_margin - 2.0 * I * capacity) / (1.0 + I);
    if (both <= std::min(home_margin, foreign_margin)) {
      r.allocation = Allocation::split;
      r.lambda = both;
    } else if (home_margin >= foreign_margin) {
      r.allocation = Allocation::home_only;
      r.lambda = home_margin - 2.0 * capacity;
    } else {
      r.allocation = Allocation::foreign_only;
      r.lambda = foreign_margin - 2.0 * I * capacity;
    }
  }

  switch (r.allocation) {
    case Allocation::slack:
    case Allocation::split:
      r.q_ee = home_q(r.lambda);
      r.q_ei = foreign_q(r.lambda);
      break;
    case Allocation::home_only:
      r.q_ee = capacity;
      r.q_ei = 0.0;
      break;
    case Allocation::foreign_only:
      r.q_ee = 0.0;
      r.q_ei = capacity;
      break;
  }
  r.p_ee = params.alpha_e - r.q_ee;
  r.p_ei = choke - r.q_ei;
  return r;
}

EquilibriumOutcome solve_constrained(const MarketParams& params, double I, double K) {
  return solve_constrained(params, I, K, FixedPointOptions{});
}

EquilibriumOutcome solve_constrained(const MarketParams& params, double I, double K,
                                     const FixedPointOptions& options) {
  params.validate();
  require_inputs(I, K);

  const EquilibriumOutcome free = solve_unconstrained(params, I);
  if (free.q_ee + free.q_ei <= K) {
    return free;
  }

  // The incumbent's price pins down the whole profile, so iterate on it.
  const auto reaction = [&](double p_ii) {
    const EntrantReply reply = entrant_constrained_reply(params, I, p_ii, K);
    return incumbent_best_response(params, std::max(0.0, reply.p_ei));
  };

  double p = free.p_ii;
  double step = std::numeric_limits<double>::infinity();
  int iterations = 0;
  while (step >= options.tolerance) {
    if (iterations >= options.max_iterations) {
      throw ConvergenceError("constrained equilibrium did not converge", step);
    }
    const double next = (1.0 - options.damping) * reaction(p) + options.damping * p;
    step = std::abs(next - p);
    p = next;
    ++iterations;
  }

  // Within one active set the reaction map is affine with a known slope, so
  // Newton steps land on the fixed point up to rounding.
  for (int polish = 0; polish < 8; ++polish) {
    const double g = reaction(p);
    const double polished = p + (g - p) / (1.0 - reaction_slope(params, I, p, K));
    if (!std::isfinite(polished) || polished == p) {
      break;
    }
    const double residual = std::abs(reaction(polished) - polished);
    if (residual > std::abs(g - p)) {
      break;
    }
    p = polished;
    if (residual == 0.0) {
      break;
    }
  }

  const EntrantReply reply = entrant_constrained_reply(params, I, p, K);
  EquilibriumOutcome out;
  out.p_ee = reply.p_ee;
  out.p_ei = reply.p_ei;
  out.p_ii = p;
  out.q_ee = reply.q_ee;
  out.q_ei = reply.q_ei;
  out.incumbent_active = p > params.C_i;
  out.q_ii = std::max(0.0, params.incumbent_base() - p + params.theta * reply.p_ei);
  out.profit_e = (reply.p_ee - params.C_e) * reply.q_ee +
                 (I * reply.p_ei - params.export_cost()) * reply.q_ei;
  out.profit_i = (p - params.C_i) * out.q_ii;
  out.lambda = reply.lambda;
  out.allocation = reply.allocation;
  out.regime = regime_of(reply);
  out.iterations = iterations;

  // Envelope: dV/dK = lambda, dV/dp_ii = I theta q_ei, and the incumbent
  // moves by theta / 2 per unit of p_ei.
  double strategic = 0.0;
  if (out.incumbent_active && reply.allocation != Allocation::slack) {
    strategic = I * params.theta * reply.q_ei * 0.5 * params.theta *
                foreign_price_slope(reply.allocation, params.theta, I);
  }
  out.capacity_value = reply.allocation == Allocation::slack ? 0.0 : reply.lambda + strategic;
  return out;
}

double shadow_price(const MarketParams& params, double I, double K) {
  return solve_constrained(params, I, K).capacity_value;
}

double profit_ec(const MarketParams& params, double K) {
  params.validate();
  const double top = params.alpha_e - params.C_e;
  if (!(K >= 0.0) || K > top) {
    throw DomainError("profit_ec needs 0 <= K <= alpha_e - C_e, got " + std::to_string(K));
  }
  return (top - K) * K;
}

double profit_ic(const MarketParams& params, double I, double K) {
  params.validate();
  require_inputs(I, K);
  const double d2 = 2.0 - params.theta * params.theta;
  return (I * (params.foreign_mass() - 2.0 * K) - params.export_cost() * d2) * K / d2;
}

}  // namespace fxd
