#include "fxd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fxd/capacity.hpp"
#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"
#include "fxd/exchange_rate.hpp"
#include "fxd/scenario.hpp"
#include "fxd/thresholds.hpp"
#include "fxd/validation.hpp"

namespace fxd {

namespace {

using nlohmann::json;

// Every printed number carries ten significant digits.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v, std::string_view missing) {
  return v ? num(*v) : std::string(missing);
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void row(std::ostream& out, std::string_view key, const std::string& value) {
  out << "  ";
  out.width(16);
  out << std::left << key << value << '\n';
}

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(what) + " must be positive");
  }
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(what) + " must be non-negative");
  }
}

void print_equilibrium(std::ostream& out, const EquilibriumOutcome& eq, double I,
                       std::optional<double> K) {
  out << "equilibrium at I = " << num(I);
  if (K) {
    out << ", K = " << num(*K);
  }
  out << '\n';
  row(out, "regime", std::string(to_string(eq.regime)));
  row(out, "p_ee", num(eq.p_ee));
  row(out, "p_ei", num(eq.p_ei));
  row(out, "p_ii", num(eq.p_ii));
  row(out, "q_ee", num(eq.q_ee));
  row(out, "q_ei", num(eq.q_ei));
  row(out, "q_ii", num(eq.q_ii));
  row(out, "profit_e", num(eq.profit_e));
  row(out, "profit_i", num(eq.profit_i));
  row(out, "lambda", num(eq.lambda));
  row(out, "capacity_value", num(eq.capacity_value));
  json rec{{"record", "equilibrium"},
           {"I", I},
           {"K", K ? json(*K) : json(nullptr)},
           {"regime", std::string(to_string(eq.regime))},
           {"p_ee", eq.p_ee},
           {"p_ei", eq.p_ei},
           {"p_ii", eq.p_ii},
           {"q_ee", eq.q_ee},
           {"q_ei", eq.q_ei},
           {"q_ii", eq.q_ii},
           {"profit_e", eq.profit_e},
           {"profit_i", eq.profit_i},
           {"lambda", eq.lambda},
           {"capacity_value", eq.capacity_value}};
  out << rec.dump() << '\n';
}

void print_thresholds(std::ostream& out, const ThresholdSet& t, double K) {
  out << "thresholds at K = " << num(K) << '\n';
  row(out, "I_z", opt_num(t.I_z, "n/a"));
  row(out, "I_v", opt_num(t.I_v, "n/a"));
  row(out, "I_t", opt_num(t.I_t, "n/a"));
  row(out, "I_f", opt_num(t.I_f, "n/a"));
  row(out, "I_h", opt_num(t.I_h, "n/a"));
  row(out, "C_v", num(t.C_v));
  row(out, "K_Q", num(t.K_Q));
  row(out, "K_h", num(t.K_h));
  row(out, "K_t", num(t.K_t));
  json rec{{"record", "thresholds"}, {"K", K},         {"I_z", opt_json(t.I_z)},
           {"I_v", opt_json(t.I_v)}, {"I_t", opt_json(t.I_t)}, {"I_f", opt_json(t.I_f)},
           {"I_h", opt_json(t.I_h)}, {"C_v", t.C_v},    {"K_Q", t.K_Q},
           {"K_h", t.K_h},           {"K_t", t.K_t}};
  out << rec.dump() << '\n';
}

void write_regions(std::ostream& out, const MarketParams& p, double imin, double imax,
                   double kmin, double kmax, int n) {
  out << "I,K,regime,I_z,I_t,I_f,I_h\n";
  const auto axis = [n](double lo, double hi, int j) {
    return n == 1 ? lo : lo + (hi - lo) * j / (n - 1);
  };
  for (int kj = 0; kj < n; ++kj) {
    const double K = axis(kmin, kmax, kj);
    const ThresholdSet t = compute_thresholds(p, K);
    for (int ij = 0; ij < n; ++ij) {
      const double I = axis(imin, imax, ij);
      out << num(I) << ',' << num(K) << ',' << to_string(classify_regime(p, I, K)) << ','
          << opt_num(t.I_z, "") << ',' << opt_num(t.I_t, "") << ',' << opt_num(t.I_f, "") << ','
          << opt_num(t.I_h, "") << '\n';
    }
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entrant/incumbent price duopoly under exchange-rate uncertainty", "fxd"};
  app.require_subcommand(1);

  std::string scenario_path;
  double rate = 0.0;
  std::optional<double> capacity;
  double imin = 0.05, imax = 5.0, kmin = 1.0, kmax = 100.0;
  int resolution = 100;
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  std::string out_path;

  const auto scenario_opt = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "scenario file (key = value lines)")->required();
  };

  auto* eq = app.add_subcommand("eq", "equilibrium at one exchange rate");
  scenario_opt(eq);
  eq->add_option("--rate", rate, "realised exchange rate")->required();
  eq->add_option("--capacity", capacity, "entrant capacity (unlimited if omitted)");

  auto* thr = app.add_subcommand("thresholds", "analytic thresholds for one capacity");
  scenario_opt(thr);
  thr->add_option("--capacity", capacity, "entrant capacity (default 0)");

  auto* cls = app.add_subcommand("classify", "regime at one (rate, capacity)");
  scenario_opt(cls);
  cls->add_option("--rate", rate, "realised exchange rate")->required();
  cls->add_option("--capacity", capacity, "entrant capacity")->required();

  auto* reg = app.add_subcommand("regions", "regime map over a rate/capacity grid as CSV");
  scenario_opt(reg);
  reg->add_option("--imin", imin);
  reg->add_option("--imax", imax);
  reg->add_option("--kmin", kmin);
  reg->add_option("--kmax", kmax);
  reg->add_option("--resolution", resolution, "grid points per axis");
  reg->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* opt = app.add_subcommand("optimize", "optimal capacity under the GBM rate");
  scenario_opt(opt);

  auto* val = app.add_subcommand("validate", "oracle cross-checks; exit 1 on failure");
  scenario_opt(val);
  val->add_option("--seed", seed);
  val->add_option("--samples", samples, "Monte Carlo draws per check");

  auto* smp = app.add_subcommand("sample", "draw exchange rates from the scenario's GBM");
  scenario_opt(smp);
  smp->add_option("--seed", seed);
  smp->add_option("--samples", samples, "number of draws")->required();
  smp->add_option("--out", out_path, "write draws here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    const Scenario sc = load_scenario(scenario_path);
    const MarketParams& p = sc.market;

    if (eq->parsed()) {
      require_positive(rate, "rate");
      if (capacity) {
        require_non_negative(*capacity, "capacity");
        print_equilibrium(out, solve_constrained(p, rate, *capacity), rate, capacity);
      } else {
        print_equilibrium(out, solve_unconstrained(p, rate), rate, std::nullopt);
      }
    } else if (thr->parsed()) {
      const double K = capacity.value_or(0.0);
      require_non_negative(K, "capacity");
      print_thresholds(out, compute_thresholds(p, K), K);
    } else if (cls->parsed()) {
      require_positive(rate, "rate");
      require_non_negative(*capacity, "capacity");
      const RegimeLabel r = classify_regime(p, rate, *capacity);
      out << to_string(r) << '\n';
      out << json{{"record", "regime"}, {"I", rate}, {"K", *capacity},
                  {"regime", std::string(to_string(r))}}
                 .dump()
          << '\n';
    } else if (reg->parsed()) {
      require_positive(imin, "imin");
      require_positive(kmin, "kmin");
      if (!(imax >= imin) || !(kmax >= kmin)) {
        throw InputError("ranges must satisfy imin <= imax and kmin <= kmax");
      }
      if (resolution < 1) {
        throw InputError("resolution must be positive");
      }
      if (out_path.empty()) {
        write_regions(out, p, imin, imax, kmin, kmax, resolution);
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
          throw InputError("cannot write " + out_path);
        }
        write_regions(file, p, imin, imax, kmin, kmax, resolution);
      }
    } else if (opt->parsed()) {
      CapacityOptions options;
      options.discount = sc.discount;
      const CapacityPlan plan = optimize_capacity(p, sc.model, options);
      out << "capacity plan\n";
      row(out, "k_star", num(plan.k_star));
      row(out, "expected_profit", num(plan.expected_profit));
      row(out, "foc_residual", num(plan.foc_residual));
      row(out, "bracket", "[" + num(plan.bracket_edges[plan.bracket]) + ", " +
                              num(plan.bracket_edges[plan.bracket + 1]) + "]");
      row(out, "objective_form", std::string(to_string(plan.objective_form)));
      row(out, "boundary", plan.boundary ? "yes" : "no");
      out << json{{"record", "capacity_plan"},
                  {"k_star", plan.k_star},
                  {"expected_profit", plan.expected_profit},
                  {"foc_residual", plan.foc_residual},
                  {"bracket",
                   {plan.bracket_edges[plan.bracket], plan.bracket_edges[plan.bracket + 1]}},
                  {"objective_form", std::string(to_string(plan.objective_form))},
                  {"boundary", plan.boundary}}
                 .dump()
          << '\n';
    } else if (val->parsed()) {
      ValidationOptions options;
      options.seed = seed;
      if (samples > 0) {
        options.samples = samples;
      }
      const ValidationReport report = run_validation(sc, options);
      for (const auto& c : report.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  observed=" << num(c.observed)
            << "  tolerance=" << num(c.tolerance) << '\n';
      }
      for (const auto& d : report.diagnostics) {
        out << (d.agrees ? "AGREE " : "DIFF  ") << d.name << "  reference=" << num(d.reference)
            << "  alternate=" << num(d.alternate) << "  relative_gap=" << num(d.relative_gap)
            << '\n';
      }
      out << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
      return report.passed() ? kExitOk : kExitCheckFailed;
    } else if (smp->parsed()) {
      const auto draws = sample(sc.model, samples, seed);
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
          throw InputError("cannot write " + out_path);
        }
      }
      std::ostream& dst = out_path.empty() ? out : file;
      for (double d : draws) {
        dst << num(d) << '\n';
      }
    }
  } catch (const ScenarioError& e) {
    err << "error: scenario";
    if (!e.field().empty()) {
      err << " field " << e.field();
    }
    err << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const EmptyRequestError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace fxd
