#include "fxd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fxd/error.hpp"

namespace fxd {

namespace {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  double price = 0.0;
};

class PriceGrid {
 public:
  PriceGrid(double top, double step) : step_(step), size_(static_cast<std::size_t>(top / step) + 1) {}
  double at(std::size_t j) const { return static_cast<double>(j) * step_; }
  std::size_t size() const { return size_; }
  double step() const { return step_; }
  std::size_t first_at_or_above(double p) const {
    if (p <= 0.0) {
      return 0;
    }
    const double j = std::ceil(p / step_ - 1e-9);
    return std::min(size_, static_cast<std::size_t>(j));
  }

 private:
  double step_;
  std::size_t size_;
};

// Objectives written out directly so the oracle shares no code with the solvers.
double home_profit(const MarketParams& p, double p_ee) {
  return (p_ee - p.C_e) * std::max(0.0, p.alpha_e - p_ee);
}

struct EntrantChoice {
  double p_ee;
  double p_ei;
};

class GridGame {
 public:
  GridGame(const MarketParams& params, double I, double K, double step)
      : p_(params), I_(I), K_(K), grid_(2.0 * std::max(params.alpha_e, params.alpha_i), step) {
    // suffix_[j]: best home price among grid points >= j (lowest on ties).
    suffix_.resize(grid_.size() + 1);
    for (std::size_t j = grid_.size(); j-- > 0;) {
      const double v = home_profit(p_, grid_.at(j));
      suffix_[j] = suffix_[j + 1];
      if (v >= suffix_[j].value) {
        suffix_[j] = {v, grid_.at(j)};
      }
    }
  }

  EntrantChoice entrant(double p_ii) const {
    const double base = (1.0 - p_.phi) * p_.alpha_i + p_.theta * p_ii;
    const double cost = p_.C_e + p_.s;
    double best = -std::numeric_limits<double>::infinity();
    EntrantChoice choice{0.0, 0.0};

    const auto evaluate = [&](double p_ei) {
      const double q_ei = std::max(0.0, base - p_ei);
      if (q_ei > K_) {
        return;
      }
      const double foreign = (I_ * p_ei - cost) * q_ei;
      Best home = suffix_[0];
      if (std::isfinite(K_)) {
        const double floor = p_.alpha_e - (K_ - q_ei);
        if (floor > 0.0) {
          home = suffix_[grid_.first_at_or_above(floor)];
          const double on_manifold = home_profit(p_, floor);
          if (on_manifold >= home.value) {
            home = {on_manifold, floor};
          }
        }
      }
      const double total = foreign + home.value;
      if (total > best || (total == best && p_ei < choice.p_ei)) {
        best = total;
        choice = {home.price, p_ei};
      }
    };

    for (std::size_t j = 0; j < grid_.size(); ++j) {
      evaluate(grid_.at(j));
    }
    if (std::isfinite(K_) && base - K_ >= 0.0) {
      evaluate(base - K_);
    }
    return choice;
  }

  double incumbent(double p_ei) const {
    double best = -std::numeric_limits<double>::infinity();
    double price = p_.C_i;
    for (std::size_t j = grid_.first_at_or_above(p_.C_i); j < grid_.size(); ++j) {
      const double p = grid_.at(j);
      const double v = (p - p_.C_i) * std::max(0.0, p_.phi * p_.alpha_i - p + p_.theta * p_ei);
      if (v > best) {
        best = v;
        price = p;
      }
    }
    return price;
  }

 private:
  MarketParams p_;
  double I_;
  double K_;
  PriceGrid grid_;
  std::vector<Best> suffix_;
};

}  // namespace

EquilibriumOutcome grid_equilibrium(const MarketParams& params, double I, double K,
                                    double grid_step) {
  params.validate();
  if (!(I > 0.0) || !(K >= 0.0) || !(grid_step > 0.0)) {
    throw DomainError("grid_equilibrium needs I > 0, K >= 0 and grid_step > 0");
  }
  const GridGame game(params, I, K, grid_step);

  std::map<std::pair<double, double>, int> seen;
  std::vector<std::pair<double, double>> history;
  double p_ii = game.incumbent(0.0);
  EntrantChoice entrant{};
  int iteration = 0;
  while (true) {
    entrant = game.entrant(p_ii);
    const double next_ii = game.incumbent(entrant.p_ei);
    const std::pair<double, double> state{entrant.p_ei, next_ii};
    ++iteration;
    if (const auto it = seen.find(state); it != seen.end()) {
      if (it->second != iteration - 1) {
        std::vector<std::pair<double, double>> cycle(history.begin() + (it->second - 1),
                                                     history.end());
        throw CycleError("grid best responses cycle without a fixed point", std::move(cycle));
      }
      p_ii = next_ii;
      break;
    }
    seen.emplace(state, iteration);
    history.push_back(state);
    p_ii = next_ii;
  }

  EquilibriumOutcome out;
  out.p_ee = entrant.p_ee;
  out.p_ei = entrant.p_ei;
  out.p_ii = p_ii;
  out.q_ee = std::max(0.0, params.alpha_e - out.p_ee);
  out.q_ei = std::max(0.0, (1.0 - params.phi) * params.alpha_i - out.p_ei + params.theta * p_ii);
  out.q_ii = std::max(0.0, params.phi * params.alpha_i - p_ii + params.theta * out.p_ei);
  out.profit_e = (out.p_ee - params.C_e) * out.q_ee + (I * out.p_ei - params.C_e - params.s) * out.q_ei;
  out.profit_i = (p_ii - params.C_i) * out.q_ii;
  out.incumbent_active = out.q_ii > 0.0;
  out.iterations = iteration;
  const bool binding = std::isfinite(K) && out.q_ee + out.q_ei >= K - 1e-9 * std::max(1.0, K);
  if (!binding) {
    out.allocation = Allocation::slack;
    out.regime = out.q_ei > 0.0 ? RegimeLabel::BU : RegimeLabel::EU;
  } else if (out.q_ei <= 0.0) {
    out.allocation = Allocation::home_only;
    out.regime = RegimeLabel::EC;
  } else if (out.q_ee <= 0.0) {
    out.allocation = Allocation::foreign_only;
    out.regime = RegimeLabel::IC;
  } else {
    out.allocation = Allocation::split;
    out.regime = RegimeLabel::BC;
  }
  return out;
}

MonteCarloEstimate mc_expected_profit(const MarketParams& params, const GbmModel& model, double K,
                                      std::size_t n, std::uint64_t seed,
                                      const CapacityOptions& options) {
  params.validate();
  model.validate();
  if (n < 1000) {
    throw DomainError("mc_expected_profit needs at least 1000 samples, got " + std::to_string(n));
  }
  const std::vector<double> rates = sample(model, n, seed);

  // Welford accumulation in index order keeps the result bit-stable.
  MonteCarloEstimate est;
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (double rate : rates) {
    double value = 0.0;
    try {
      value = -params.u * K + options.discount * solve_constrained(params, rate, K).profit_e;
    } catch (const std::exception&) {
      ++est.failures;
      continue;
    }
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
  }
  est.samples = count;
  est.mean = mean;
  est.standard_error =
      count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) : 0.0;
  return est;
}

}  // namespace fxd
