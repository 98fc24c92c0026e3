#include "fxd/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"
#include "fxd/thresholds.hpp"

namespace fxd {

namespace {

enum class Quantity { profit, marginal };

double value_of(const EquilibriumOutcome& eq, Quantity q) {
  return q == Quantity::profit ? eq.profit_e : eq.capacity_value;
}

// Coefficients of a + b I + d / I.
struct RateForm {
  double constant = 0.0;
  double linear = 0.0;
  double inverse = 0.0;
};

// Closed form of the integrand in I inside a regime, when it has one.
std::optional<RateForm> rate_form(const MarketParams& p, double K, RegimeLabel regime,
                                  Quantity q) {
  const double t2 = p.theta * p.theta;
  const double d2 = 2.0 - t2;
  const double d4 = 4.0 - t2;
  const double c = p.export_cost();
  const double mass = p.foreign_mass();
  const double home = p.alpha_e - p.C_e;
  switch (regime) {
    case RegimeLabel::EU:
      return q == Quantity::profit ? RateForm{0.25 * home * home, 0.0, 0.0} : RateForm{};
    case RegimeLabel::BU:
      if (q == Quantity::marginal) {
        return RateForm{};
      }
      return RateForm{0.25 * home * home - 2.0 * mass * c * d2 / (d4 * d4),
                      mass * mass / (d4 * d4), c * c * d2 * d2 / (d4 * d4)};
    case RegimeLabel::EC:
      return q == Quantity::profit ? RateForm{(home - K) * K, 0.0, 0.0}
                                   : RateForm{home - 2.0 * K, 0.0, 0.0};
    case RegimeLabel::IC:
      return q == Quantity::profit ? RateForm{-c * K, (mass - 2.0 * K) * K / d2, 0.0}
                                   : RateForm{-c, (mass - 4.0 * K) / d2, 0.0};
    case RegimeLabel::BC:
      return std::nullopt;
  }
  return std::nullopt;
}

double tail(const GbmModel& model, const RateForm& f, double lo, double hi) {
  return f.constant * partial_moment(model, 0.0, lo, hi) +
         f.linear * partial_moment(model, 1.0, lo, hi) +
         f.inverse * partial_moment(model, -1.0, lo, hi);
}

double expectation(const MarketParams& params, const GbmModel& model, double K, Quantity q,
                   const CapacityOptions& options) {
  if (model.deterministic()) {
    return value_of(solve_constrained(params, model.mean(), K), q);
  }
  const double cut = options.tail_cutoff;
  const ThresholdSet t = compute_thresholds(params, K);
  std::vector<double> edges{-cut, cut};
  bool below = false;
  bool above = false;
  for (const auto& rate : {t.I_z, t.I_t, t.I_f, t.I_h}) {
    if (!rate) {
      continue;
    }
    const double e = epsilon_for_rate(model, *rate);
    if (e <= -cut) {
      below = true;
    } else if (e >= cut) {
      above = true;
    } else {
      edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const auto integrand = [&](double eps) {
    return value_of(solve_constrained(params, rate_at(model, eps), K), q) *
           standard_normal_pdf(eps);
  };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double error = 0.0;
    double l1 = 0.0;
    const double piece = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, edges[i], edges[i + 1], 12, options.relative_tolerance, &error, &l1);
    if (error > 100.0 * options.relative_tolerance * std::max(1.0, l1)) {
      throw AccuracyError("quadrature did not converge on [" + std::to_string(edges[i]) + ", " +
                              std::to_string(edges[i + 1]) + "]",
                          error);
    }
    total += piece;
  }

  const double inf = std::numeric_limits<double>::infinity();
  if (!below) {
    const auto regime = solve_constrained(params, rate_at(model, -cut), K).regime;
    if (const auto f = rate_form(params, K, regime, q)) {
      total += tail(model, *f, -inf, -cut);
    }
  }
  if (!above) {
    const auto regime = solve_constrained(params, rate_at(model, cut), K).regime;
    if (const auto f = rate_form(params, K, regime, q)) {
      total += tail(model, *f, cut, inf);
    }
  }
  return total;
}

void require_inputs(const MarketParams& params, const GbmModel& model, double K) {
  params.validate();
  model.validate();
  if (!(K >= 0.0) || !std::isfinite(K)) {
    throw DomainError("capacity must be non-negative, got " + std::to_string(K));
  }
}

}  // namespace

std::string_view to_string(ObjectiveForm form) noexcept {
  switch (form) {
    case ObjectiveForm::scarce:
      return "scarce";
    case ObjectiveForm::intermediate:
      return "intermediate";
    case ObjectiveForm::ample:
      return "ample";
    case ObjectiveForm::unconstrained:
      return "unconstrained";
  }
  return "?";
}

ObjectiveForm objective_form(const MarketParams& params, double K) {
  const ThresholdSet t = compute_thresholds(params, K);
  if (K < t.K_Q) {
    return ObjectiveForm::scarce;
  }
  if (K < t.K_h) {
    return ObjectiveForm::intermediate;
  }
  if (K < t.K_t) {
    return ObjectiveForm::ample;
  }
  return ObjectiveForm::unconstrained;
}

double expected_profit(const MarketParams& params, const GbmModel& model, double K,
                       const CapacityOptions& options) {
  require_inputs(params, model, K);
  if (K == 0.0) {
    return 0.0;
  }
  return -params.u * K + options.discount * expectation(params, model, K, Quantity::profit, options);
}

double foc_residual(const MarketParams& params, const GbmModel& model, double K,
                    const CapacityOptions& options) {
  require_inputs(params, model, K);
  if (!(K > 0.0)) {
    throw DomainError("foc_residual needs K > 0");
  }
  return -params.u + options.discount * expectation(params, model, K, Quantity::marginal, options);
}

CapacityPlan optimize_capacity(const MarketParams& params, const GbmModel& model,
                               const CapacityOptions& options) {
  params.validate();
  model.validate();
  const ThresholdSet t = compute_thresholds(params, 0.0);
  const double k_max = t.K_t + t.K_Q;

  CapacityPlan plan;
  std::vector<double> edges{0.0, t.K_Q, t.K_h, t.K_t, k_max};
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * k_max; }),
              edges.end());
  plan.bracket_edges = edges;

  const auto f = [&](double K) { return expected_profit(params, model, K, options); };
  const auto foc = [&](double K) { return foc_residual(params, model, K, options); };

  double best_k = 0.0;
  double best_v = f(0.0);
  const auto consider = [&](double K, double v) {
    if (v > best_v || (v == best_v && K < best_k)) {
      best_k = K;
      best_v = v;
    }
  };

  const int m = std::max(2, options.scan_points);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const double lo = edges[b];
    const double hi = edges[b + 1];
    std::vector<double> values(m + 1);
    int arg = 0;
    for (int j = 0; j <= m; ++j) {
      values[j] = f(lo + j * (hi - lo) / m);
      consider(lo + j * (hi - lo) / m, values[j]);
      if (values[j] > values[arg]) {
        arg = j;
      }
    }
    // Golden-section search on the cells around the best scan point.
    double a = lo + std::max(0, arg - 1) * (hi - lo) / m;
    double d = lo + std::min(m, arg + 1) * (hi - lo) / m;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = d - ratio * (d - a);
    double x2 = a + ratio * (d - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (d - a > 1e-6 * std::max(1.0, hi)) {
      if (f1 >= f2) {
        d = x2;
        x2 = x1;
        f2 = f1;
        x1 = d - ratio * (d - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + ratio * (d - a);
        f2 = f(x2);
      }
    }
    double k = 0.5 * (a + d);
    // The objective is too flat near its peak for comparisons alone to pin
    // the stationary point; finish on the derivative when it changes sign.
    const double span = 1e-4 * std::max(1.0, hi);
    const double left = std::max(lo, k - span);
    const double right = std::min(hi, k + span);
    if (left > 0.0 && right > left) {
      const double g_left = foc(left);
      const double g_right = foc(right);
      if (g_left > 0.0 && g_right < 0.0) {
        std::uintmax_t iterations = 100;
        const auto root = boost::math::tools::toms748_solve(
            foc, left, right, g_left, g_right,
            boost::math::tools::eps_tolerance<double>(48), iterations);
        k = 0.5 * (root.first + root.second);
      }
    }
    consider(k, f(k));
  }

  plan.k_star = best_k;
  plan.expected_profit = best_v;
  plan.foc_residual = foc(std::max(best_k, 1e-9 * std::max(1.0, k_max)));
  plan.objective_form = objective_form(params, best_k);
  plan.bracket = 0;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    if (best_k >= edges[b]) {
      plan.bracket = static_cast<int>(b);
    }
  }
  if (plan.bracket == static_cast<int>(edges.size()) - 1) {
    --plan.bracket;
  }
  for (double e : edges) {
    if (std::abs(best_k - e) <= 1e-9 * std::max(1.0, k_max)) {
      plan.boundary = true;
    }
  }
  return plan;
}

CostThresholds capacity_cost_thresholds(const MarketParams& params, const GbmModel& model,
                                        const CapacityOptions& options) {
  params.validate();
  model.validate();
  const ThresholdSet t = compute_thresholds(params, 0.0);
  const double u_max = 10.0 * params.alpha_e;

  const auto k_star_at = [&](double u) {
    MarketParams p = params;
    p.u = u;
    return optimize_capacity(p, model, options).k_star;
  };

  const auto crossing = [&](double edge) -> std::optional<double> {
    const auto above = [&](double u) { return k_star_at(u) > edge; };
    if (!above(0.0)) {
      return std::nullopt;
    }
    // By concavity k_star leaves the edge where u equals the marginal value
    // of capacity there; bracket around that estimate and bisect.
    MarketParams free = params;
    free.u = 0.0;
    const double guess = std::clamp(foc_residual(free, model, edge, options), 0.0, u_max);
    double width = 1e-4 * std::max(1.0, guess);
    double lo = std::max(0.0, guess - width);
    double hi = std::min(u_max, guess + width);
    while (!(above(lo) && !above(hi))) {
      if (lo == 0.0 && hi == u_max) {
        return std::nullopt;
      }
      width *= 10.0;
      lo = std::max(0.0, guess - width);
      hi = std::min(u_max, guess + width);
    }
    while (hi - lo > 1e-7 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      (above(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  return {crossing(t.K_Q), crossing(t.K_h)};
}

}  // namespace fxd
