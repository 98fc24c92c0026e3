#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "fxd/demand.hpp"
#include "fxd/exchange_rate.hpp"

namespace fxd::test {

inline MarketParams baseline() { return MarketParams::create(100, 120, 0.5, 0.5, 20, 30, 5, 10); }

inline GbmModel baseline_gbm() { return GbmModel{1.0, 0.05, 0.2, 1.0}; }

inline std::string baseline_scenario_path() { return FXD_SOURCE_DIR "/scenarios/baseline.scenario"; }

// Portable uniform draws: the std distributions are implementation-defined.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 gen_;
};

// theta in [0, 0.9], phi in [0.1, 0.9], costs strictly below the viability bounds.
inline MarketParams random_params(Draws& d) {
  const double alpha_e = d.uniform(50, 150);
  const double alpha_i = d.uniform(50, 150);
  const double phi = d.uniform(0.1, 0.9);
  const double theta = d.uniform(0.0, 0.9);
  const double C_e = d.uniform(0.0, 0.8) * alpha_e;
  const double C_i = d.uniform(0.0, 0.8) * phi * alpha_i;
  const double s = d.uniform(0.0, 10.0);
  const double u = d.uniform(0.0, 10.0);
  return MarketParams::create(alpha_e, alpha_i, phi, theta, C_e, C_i, s, u);
}

}  // namespace fxd::test
