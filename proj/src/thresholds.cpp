#include "fxd/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "fxd/error.hpp"

namespace fxd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Constants {
  double c;     // C_e + s
  double d2;    // 2 - theta^2
  double d4;    // 4 - theta^2
  double mass;  // alpha_i (2 - 2 phi + theta phi) + C_i theta
  double K_Q;
};

Constants constants_of(const MarketParams& p) {
  const double t2 = p.theta * p.theta;
  return {p.export_cost(), 2.0 - t2, 4.0 - t2, p.foreign_mass(), 0.5 * (p.alpha_e - p.C_e)};
}

std::optional<double> positive(double value) {
  if (std::isfinite(value) && value > 0.0) {
    return value;
  }
  return std::nullopt;
}

// Raw threshold curves; +inf where the boundary lies beyond every rate.
double raw_I_z(const Constants& k) { return k.mass > 0.0 ? k.c * k.d2 / k.mass : kInf; }

double raw_I_t(const Constants& k, double K) {
  const double den = k.mass + k.d4 * (k.K_Q - K);
  return den > 0.0 ? k.c * k.d2 / den : kInf;
}

double raw_I_h(const MarketParams& p, const Constants& k, double K) {
  const double den = k.mass - K * k.d4;
  return den > 0.0 ? k.d2 * (p.alpha_e + p.s) / den : kInf;
}

// May be negative: then the entrant exports at every rate.
double raw_I_f(const MarketParams& p, const Constants& k, double K) {
  return k.mass > 0.0 ? k.d2 * (p.alpha_e + p.s - 2.0 * K) / k.mass : kInf;
}

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace

std::string_view to_string(ThresholdName name) noexcept {
  switch (name) {
    case ThresholdName::I_z:
      return "I_z";
    case ThresholdName::I_v:
      return "I_v";
    case ThresholdName::I_t:
      return "I_t";
    case ThresholdName::I_h:
      return "I_h";
    case ThresholdName::I_f:
      return "I_f";
  }
  return "?";
}

double incumbent_exit_rate_raw(const MarketParams& p) noexcept {
  const double d2 = 2.0 - p.theta * p.theta;
  const double den = p.C_i * d2 - p.alpha_i * (p.theta * (1.0 - p.phi) + 2.0 * p.phi);
  return den > 0.0 ? p.theta * p.export_cost() / den : kInf;
}

std::optional<double> home_exit_rate(const MarketParams& params, double K, IhForm form) {
  params.validate();
  const Constants k = constants_of(params);
  if (form == IhForm::alpha_i_mass) {
    return positive(raw_I_h(params, k, K));
  }
  const double mass =
      params.alpha_e * (2.0 * (1.0 - params.phi) + params.theta * params.phi) +
      params.C_i * params.theta;
  const double den = mass - K * k.d4;
  return den > 0.0 ? positive(k.d2 * (params.alpha_e + params.s) / den) : std::nullopt;
}

ThresholdSet compute_thresholds(const MarketParams& params, double K) {
  params.validate();
  if (!(K >= 0.0)) {
    throw DomainError("capacity must be non-negative");
  }
  const Constants k = constants_of(params);
  ThresholdSet t;
  t.K_Q = k.K_Q;
  t.K_h = k.mass / k.d4;
  t.K_t = (2.0 * k.mass + k.d4 * (params.alpha_e - params.C_e)) / (2.0 * k.d4);
  t.C_v = params.alpha_i * (params.theta * (1.0 - params.phi) + 2.0 * params.phi) / k.d2;
  t.I_z = positive(raw_I_z(k));
  if (params.C_i > t.C_v) {
    t.I_v = positive(incumbent_exit_rate_raw(params));
  }
  t.I_t = positive(raw_I_t(k, K));
  t.I_h = positive(raw_I_h(params, k, K));
  t.I_f = positive(raw_I_f(params, k, K));
  return t;
}

RegimeLabel classify_regime(const MarketParams& params, double I, double K) {
  params.validate();
  if (!(I > 0.0) || !(K >= 0.0)) {
    throw DomainError("classify_regime needs I > 0 and K >= 0");
  }
  const Constants k = constants_of(params);
  const bool slack = K >= k.K_Q && I <= raw_I_t(k, K);
  if (slack) {
    return I <= raw_I_z(k) ? RegimeLabel::EU : RegimeLabel::BU;
  }
  if (I < raw_I_f(params, k, K)) {
    return RegimeLabel::EC;
  }
  if (I > raw_I_h(params, k, K)) {
    return RegimeLabel::IC;
  }
  return RegimeLabel::BC;
}

double numeric_threshold(const MarketParams& params, double K, ThresholdName which) {
  params.validate();
  std::function<bool(double)> event;
  switch (which) {
    case ThresholdName::I_z:
      event = [&](double I) { return solve_unconstrained(params, I).q_ei > 0.0; };
      break;
    case ThresholdName::I_v:
      event = [&](double I) { return solve_unconstrained(params, I).q_ii <= 0.0; };
      break;
    case ThresholdName::I_t:
      event = [&](double I) {
        const auto eq = solve_unconstrained(params, I);
        return eq.q_ee + eq.q_ei > K;
      };
      break;
    case ThresholdName::I_h:
      event = [&](double I) { return solve_constrained(params, I, K).q_ee <= 0.0; };
      break;
    case ThresholdName::I_f:
      event = [&](double I) { return solve_constrained(params, I, K).q_ei > 0.0; };
      break;
  }

  // Coarse geometric scan for the first flip, then bisection.
  constexpr int kSteps = 8 * 12;
  double lo = 1e-6;
  bool lo_event = event(lo);
  std::optional<double> hi;
  for (int i = 1; i <= kSteps; ++i) {
    const double I = 1e-6 * std::pow(10.0, i / 8.0);
    if (event(I) != lo_event) {
      hi = I;
      break;
    }
    lo = I;
  }
  if (!hi) {
    throw BoundaryNotFoundError(std::string(to_string(which)) +
                                ": defining event does not change sign on [1e-6, 1e6]");
  }
  double upper = *hi;
  for (int i = 0; i < 200 && upper - lo > 1e-14 * upper; ++i) {
    const double mid = 0.5 * (lo + upper);
    if (event(mid) == lo_event) {
      lo = mid;
    } else {
      upper = mid;
    }
  }
  return 0.5 * (lo + upper);
}

bool OrderingReport::stated_hold() const noexcept {
  for (const auto& c : stated) {
    if (!c.holds()) {
      return false;
    }
  }
  return !stated.empty();
}

OrderingReport threshold_ordering_case(const MarketParams& params, int points) {
  params.validate();
  const ThresholdSet t = compute_thresholds(params, 0.0);
  const Constants k = constants_of(params);
  OrderingReport report;
  report.K_Q = t.K_Q;
  report.K_h = t.K_h;
  report.K_t = t.K_t;

  using Curve = std::function<double(double)>;
  const Curve I_h = [&](double K) { return raw_I_h(params, k, K); };
  const Curve I_f = [&](double K) { return raw_I_f(params, k, K); };
  const Curve I_t = [&](double K) { return raw_I_t(k, K); };
  const Curve I_z = [&](double) { return raw_I_z(k); };

  const auto check = [&](std::string statement, double lo, double hi, const Curve& big,
                         const Curve& small) {
    IntervalCheck c{std::move(statement), lo, hi, points, 0, std::nullopt};
    for (int j = 0; j < points; ++j) {
      const double K = lo + (j + 0.5) * (hi - lo) / points;
      if (!(big(K) > small(K))) {
        ++c.violations;
        if (!c.first_violation) {
          c.first_violation = K;
        }
      }
    }
    return c;
  };

  const double K_Q = t.K_Q;
  const double K_h = t.K_h;
  const double K_t = t.K_t;
  if (K_Q < K_h && K_h < K_t) {
    report.ordering = OrderingCase::home_first;
    report.stated.push_back(check("I_h > I_f on [0, K_Q]", 0.0, K_Q, I_h, I_f));
    report.stated.push_back(check("I_h > I_f on [K_Q, K_h]", K_Q, K_h, I_h, I_f));
    report.stated.push_back(check("I_f > I_z on [K_Q, K_h]", K_Q, K_h, I_f, I_z));
    report.stated.push_back(check("I_t > I_z on [K_h, K_t]", K_h, K_t, I_t, I_z));
    report.supplementary.push_back(check("I_t > I_z on [K_Q, K_h]", K_Q, K_h, I_t, I_z));
    report.supplementary.push_back(check("I_h > I_t on [K_Q, K_h]", K_Q, K_h, I_h, I_t));
  } else if (K_h < K_Q && K_Q < K_t) {
    report.ordering = OrderingCase::foreign_first;
    report.stated.push_back(check("I_h > I_f on [0, K_h]", 0.0, K_h, I_h, I_f));
    report.stated.push_back(check("I_t > I_z on [K_Q, K_t]", K_Q, K_t, I_t, I_z));
    report.supplementary.push_back(check("I_f > I_z on [K_h, K_Q]", K_h, K_Q, I_f, I_z));
  }
  return report;
}

std::vector<Diagnostic> closed_form_diagnostics(const MarketParams& params, double I, double K) {
  params.validate();
  std::vector<Diagnostic> out;
  const auto add = [&](std::string name, double reference, double alternate, double tol) {
    const double gap = relative_gap(reference, alternate);
    out.push_back({std::move(name), reference, alternate, gap, gap <= tol});
  };

  std::optional<double> bisected;
  try {
    bisected = numeric_threshold(params, K, ThresholdName::I_h);
  } catch (const BoundaryNotFoundError&) {
  }
  const auto ih_i = home_exit_rate(params, K, IhForm::alpha_i_mass);
  const auto ih_e = home_exit_rate(params, K, IhForm::alpha_e_mass);
  if (bisected && ih_i) {
    add("I_h alpha_i-mass form vs bisection", *bisected, *ih_i, 1e-6);
  }
  if (bisected && ih_e) {
    add("I_h alpha_e-mass form vs bisection", *bisected, *ih_e, 1e-6);
  }

  const EquilibriumOutcome eq = solve_constrained(params, I, K);
  if (eq.regime == RegimeLabel::BC) {
    const double A = params.entrant_base();
    const double tp = params.theta * eq.p_ii;
    const double home =
        (I * (2.0 * params.alpha_e + A - 2.0 * K + tp) + (params.alpha_e - params.s)) /
        (2.0 * (1.0 + I));
    add("split-regime home price reply", eq.p_ee, home, 1e-9);
    // The alternate foreign-price reply carries an undefined coefficient on s;
    // it is evaluated with that term dropped.
    const double foreign =
        (I * (A + tp) + (params.alpha_e + 2.0 * A - 2.0 * K + 2.0 * tp)) / (2.0 * (1.0 + I));
    add("split-regime foreign price reply (s term dropped)", eq.p_ei, foreign, 1e-9);
  }
  const double reply_e =
      0.5 * (params.phi * params.alpha_e + params.C_i + params.theta * eq.p_ei);
  add("incumbent reply with phi alpha_e base", eq.p_ii, reply_e, 1e-9);
  return out;
}

}  // namespace fxd
