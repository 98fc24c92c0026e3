#pragma once

#include <cstdint>
#include <vector>

namespace fxd {

/// Exchange rate at horizon t under geometric Brownian motion,
/// I(t) = I0 * exp((mu - sigma^2/2) t + sigma * eps * sqrt(t)), eps ~ N(0, 1).
/// I0 is home currency per unit of foreign currency.
struct GbmModel {
  double I0 = 1.0;
  double mu = 0.0;
  double sigma = 0.0;
  double t = 1.0;

  /// Throws DomainError unless I0 > 0, t > 0, sigma >= 0 (all finite).
  void validate() const;

  bool deterministic() const noexcept { return sigma == 0.0; }
  /// Mean of ln I(t).
  double log_mean() const noexcept;
  /// Standard deviation of ln I(t).
  double log_sd() const noexcept;
  /// E[I(t)] = I0 e^(mu t).
  double mean() const noexcept;
};

double rate_at(const GbmModel& model, double epsilon);

/// Lognormal pdf of I(t). Throws DomainError for rate <= 0 and
/// DegenerateDistributionError for sigma == 0.
double density(const GbmModel& model, double rate);

/// Inverse of rate_at in epsilon.
double epsilon_for_rate(const GbmModel& model, double rate);

/// E[I(t)^k ; lo < eps < hi] for real k; bounds may be +-infinity.
double partial_moment(const GbmModel& model, double k, double eps_lo, double eps_hi);

/// Standard normal draws, deterministic given seed. Draw i comes from the
/// substream of block i / kSampleBlock, so the sequence does not depend on
/// how callers partition the work.
std::vector<double> standard_normals(std::size_t n, std::uint64_t seed);

/// n exchange-rate draws, each rate_at(model, eps_i) for the draws of
/// standard_normals(n, seed). Throws EmptyRequestError when n == 0.
std::vector<double> sample(const GbmModel& model, std::size_t n, std::uint64_t seed);

inline constexpr std::size_t kSampleBlock = 4096;

double standard_normal_pdf(double x) noexcept;
double standard_normal_cdf(double x) noexcept;

}  // namespace fxd
