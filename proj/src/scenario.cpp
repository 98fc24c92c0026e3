#include "fxd/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>

namespace fxd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

constexpr std::array<std::string_view, 12> kRequired{
    "alpha_e", "alpha_i", "phi", "theta", "C_e", "C_i", "s", "u", "I0", "mu", "sigma", "t"};

}  // namespace

Scenario parse_scenario(std::istream& in) {
  std::map<std::string, double, std::less<>> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioError("", "line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string_view text = trim(view.substr(eq + 1));
    const bool known = key == "discount" ||
                       std::find(kRequired.begin(), kRequired.end(), key) != kRequired.end();
    if (!known) {
      throw ScenarioError(key, "line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw ScenarioError(key, "line " + std::to_string(number) + ": " + key +
                                   " is not a number: '" + std::string(text) + "'");
    }
    if (!values.emplace(key, value).second) {
      throw ScenarioError(key, "line " + std::to_string(number) + ": " + key + " given twice");
    }
  }
  for (const auto key : kRequired) {
    if (values.find(key) == values.end()) {
      throw ScenarioError(std::string(key), "missing required field " + std::string(key));
    }
  }

  Scenario sc;
  sc.market = {values["alpha_e"], values["alpha_i"], values["phi"], values["theta"],
               values["C_e"],     values["C_i"],     values["s"],   values["u"]};
  sc.model = {values["I0"], values["mu"], values["sigma"], values["t"]};
  if (const auto it = values.find("discount"); it != values.end()) {
    sc.discount = it->second;
  }

  // Re-raise validation failures with the field name attached.
  try {
    sc.market.validate();
    sc.model.validate();
  } catch (const DomainError& e) {
    const std::string what = e.what();
    std::string field;
    for (const auto key : kRequired) {
      if (what.rfind(std::string(key) + " ", 0) == 0) {
        field = key;
      }
    }
    throw ScenarioError(field, what);
  }
  if (!(sc.discount > 0.0)) {
    throw ScenarioError("discount", "discount must be positive");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("", "cannot open scenario file " + path);
  }
  return parse_scenario(in);
}

}  // namespace fxd
