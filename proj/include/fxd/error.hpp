#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fxd {

/// Input outside the model's parameter domain (negative price, phi > 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A zero-volatility model was passed where a continuous law is required.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EmptyRequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-point iteration hit its cap. Carries the last observed residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class BoundaryNotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature could not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Grid best-response iteration entered a cycle without a fixed point.
/// `states` holds the cycle as (p_ei, p_ii) pairs.
class CycleError : public std::runtime_error {
 public:
  CycleError(const std::string& what, std::vector<std::pair<double, double>> states)
      : std::runtime_error(what), states_(std::move(states)) {}
  const std::vector<std::pair<double, double>>& states() const noexcept { return states_; }

 private:
  std::vector<std::pair<double, double>> states_;
};

}  // namespace fxd
