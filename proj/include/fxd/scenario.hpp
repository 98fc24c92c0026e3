#pragma once

#include <istream>
#include <string>

#include "fxd/demand.hpp"
#include "fxd/error.hpp"
#include "fxd/exchange_rate.hpp"

namespace fxd {

/// Malformed or invalid scenario input. `field` names the offending key
/// (empty for syntax errors not tied to one key).
class ScenarioError : public DomainError {
 public:
  ScenarioError(const std::string& field, const std::string& what)
      : DomainError(what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct Scenario {
  MarketParams market;
  GbmModel model;
  double discount = 1.0;
};

/// Parses `key = value` lines; `#` starts a comment. Every MarketParams and
/// GbmModel field is required (alpha_e alpha_i phi theta C_e C_i s u I0 mu
/// sigma t); `discount` is optional. Unknown or repeated keys are errors.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

}  // namespace fxd
