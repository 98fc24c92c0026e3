#include "fxd/demand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fxd/error.hpp"

namespace fxd {

namespace {

void require(bool ok, const char* field, const char* rule, double value) {
  if (!ok) {
    throw DomainError(std::string(field) + " " + rule + ", got " + std::to_string(value));
  }
}

void require_price(double p, const char* name) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError(std::string(name) + " must be a non-negative price");
  }
}

}  // namespace

MarketParams MarketParams::create(double alpha_e, double alpha_i, double phi, double theta,
                                  double C_e, double C_i, double s, double u) {
  MarketParams p{alpha_e, alpha_i, phi, theta, C_e, C_i, s, u};
  p.validate();
  return p;
}

void MarketParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(alpha_e) && alpha_e > 0.0, "alpha_e", "must be positive", alpha_e);
  require(finite(alpha_i) && alpha_i > 0.0, "alpha_i", "must be positive", alpha_i);
  require(finite(phi) && phi >= 0.0 && phi <= 1.0, "phi", "must lie in [0, 1]", phi);
  require(finite(theta) && theta >= 0.0 && theta < 1.0, "theta", "must lie in [0, 1)", theta);
  require(finite(C_e) && C_e >= 0.0, "C_e", "must be non-negative", C_e);
  require(finite(C_i) && C_i >= 0.0, "C_i", "must be non-negative", C_i);
  require(finite(s) && s >= 0.0, "s", "must be non-negative", s);
  require(finite(u) && u >= 0.0, "u", "must be non-negative", u);
  require(alpha_e > C_e, "alpha_e", "must exceed C_e", alpha_e);
  require(phi * alpha_i > C_i, "C_i", "must be below phi * alpha_i", C_i);
}

double MarketParams::foreign_mass() const noexcept {
  return alpha_i * (2.0 - 2.0 * phi + theta * phi) + C_i * theta;
}

double demand_ee(const MarketParams& params, double p_ee) {
  require_price(p_ee, "p_ee");
  return std::max(0.0, params.alpha_e - p_ee);
}

double demand_ei(const MarketParams& params, double p_ei, double p_ii) {
  require_price(p_ei, "p_ei");
  require_price(p_ii, "p_ii");
  return std::max(0.0, params.entrant_base() - p_ei + params.theta * p_ii);
}

double demand_ii(const MarketParams& params, double p_ii, double p_ei) {
  require_price(p_ii, "p_ii");
  require_price(p_ei, "p_ei");
  return std::max(0.0, params.incumbent_base() - p_ii + params.theta * p_ei);
}

}  // namespace fxd
