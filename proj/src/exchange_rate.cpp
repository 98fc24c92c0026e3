#include "fxd/exchange_rate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "fxd/error.hpp"

namespace fxd {

void GbmModel::validate() const {
  if (!std::isfinite(I0) || I0 <= 0.0) {
    throw DomainError("I0 must be positive, got " + std::to_string(I0));
  }
  if (!std::isfinite(t) || t <= 0.0) {
    throw DomainError("t must be positive, got " + std::to_string(t));
  }
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw DomainError("sigma must be non-negative, got " + std::to_string(sigma));
  }
  if (!std::isfinite(mu)) {
    throw DomainError("mu must be finite");
  }
}

double GbmModel::log_mean() const noexcept {
  return std::log(I0) + (mu - 0.5 * sigma * sigma) * t;
}

double GbmModel::log_sd() const noexcept { return sigma * std::sqrt(t); }

double GbmModel::mean() const noexcept { return I0 * std::exp(mu * t); }

double rate_at(const GbmModel& model, double epsilon) {
  model.validate();
  return model.I0 * std::exp((model.mu - 0.5 * model.sigma * model.sigma) * model.t +
                             model.sigma * epsilon * std::sqrt(model.t));
}

double density(const GbmModel& model, double rate) {
  model.validate();
  if (!(rate > 0.0)) {
    throw DomainError("density requires a positive rate");
  }
  if (model.deterministic()) {
    throw DegenerateDistributionError("density undefined for sigma = 0");
  }
  const double sd = model.log_sd();
  const double z = (std::log(rate) - model.log_mean()) / sd;
  return standard_normal_pdf(z) / (rate * sd);
}

double epsilon_for_rate(const GbmModel& model, double rate) {
  model.validate();
  if (!(rate > 0.0)) {
    throw DomainError("epsilon_for_rate requires a positive rate");
  }
  if (model.deterministic()) {
    throw DegenerateDistributionError("epsilon_for_rate undefined for sigma = 0");
  }
  return (std::log(rate) - model.log_mean()) / model.log_sd();
}

double partial_moment(const GbmModel& model, double k, double eps_lo, double eps_hi) {
  model.validate();
  if (eps_hi <= eps_lo) {
    return 0.0;
  }
  // I^k = exp(k m + k s eps); completing the square shifts the normal by k s.
  const double m = model.log_mean();
  const double s = model.log_sd();
  const double scale = std::exp(k * m + 0.5 * k * k * s * s);
  const double shift = k * s;
  return scale * (standard_normal_cdf(eps_hi - shift) - standard_normal_cdf(eps_lo - shift));
}

std::vector<double> standard_normals(std::size_t n, std::uint64_t seed) {
  std::vector<double> out(n);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t start = 0; start < n; start += kSampleBlock) {
    const std::uint64_t block = start / kSampleBlock;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    boost::random::mt19937_64 engine(seq);
    normal.reset();
    const std::size_t end = std::min(n, start + kSampleBlock);
    for (std::size_t i = start; i < end; ++i) {
      out[i] = normal(engine);
    }
  }
  return out;
}

std::vector<double> sample(const GbmModel& model, std::size_t n, std::uint64_t seed) {
  model.validate();
  if (n == 0) {
    throw EmptyRequestError("sample requires n >= 1");
  }
  auto draws = standard_normals(n, seed);
  for (double& d : draws) {
    d = rate_at(model, d);
  }
  return draws;
}

double standard_normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double standard_normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace fxd
