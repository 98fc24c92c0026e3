#include <doctest.h>

#include <cmath>

#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"
#include "fxd/thresholds.hpp"
#include "support.hpp"

using namespace fxd;

TEST_CASE("baseline thresholds") {
  const MarketParams p = test::baseline();
  const ThresholdSet t0 = compute_thresholds(p, 0);
  CHECK(*t0.I_z == doctest::Approx(25 * 1.75 / 165));
  CHECK(t0.K_Q == doctest::Approx(40));
  CHECK(t0.K_h == doctest::Approx(44));
  CHECK(t0.K_t == doctest::Approx(84));
  CHECK_FALSE(t0.I_v.has_value());

  const ThresholdSet t = compute_thresholds(p, 30);
  CHECK(*t.I_t == doctest::Approx(87.5 / 405));
  CHECK(*t.I_f == doctest::Approx(1.75 * 45 / 165));
  CHECK(*t.I_h == doctest::Approx(3.5));

  MarketParams q = p;
  q.theta = 0.0;
  CHECK(*compute_thresholds(q, 0).I_z == doctest::Approx(50.0 / 120));
}

TEST_CASE("I_h forms") {
  const MarketParams p = test::baseline();
  CHECK(*home_exit_rate(p, 30, IhForm::alpha_i_mass) == doctest::Approx(3.5));
  CHECK(*home_exit_rate(p, 30, IhForm::alpha_e_mass) != doctest::Approx(3.5));
  CHECK_FALSE(home_exit_rate(p, 50, IhForm::alpha_i_mass).has_value());
}

TEST_CASE("numeric thresholds agree with the closed forms") {
  const MarketParams p = test::baseline();
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-6 * std::abs(b); };
  CHECK(close(numeric_threshold(p, 0, ThresholdName::I_z), *compute_thresholds(p, 0).I_z));
  const ThresholdSet t = compute_thresholds(p, 30);
  CHECK(close(numeric_threshold(p, 30, ThresholdName::I_f), *t.I_f));
  CHECK(close(numeric_threshold(p, 30, ThresholdName::I_h), *t.I_h));
  CHECK(close(numeric_threshold(p, 60, ThresholdName::I_t), *compute_thresholds(p, 60).I_t));
  CHECK_THROWS_AS(numeric_threshold(p, 0, ThresholdName::I_v), BoundaryNotFoundError);
}

TEST_CASE("incumbent exit when its cost is high") {
  // C_v exceeds phi alpha_i whenever theta > 0, so the viability bound
  // always excludes the exit case; the raw formula still has a root.
  const MarketParams p = test::baseline();
  CHECK(compute_thresholds(p, 0).C_v > p.incumbent_base());
  const double raw = incumbent_exit_rate_raw(p);
  CHECK_FALSE((raw > 0 && std::isfinite(raw)));
}

TEST_CASE("classification") {
  const MarketParams p = test::baseline();
  CHECK(classify_regime(p, 0.3, 30) == RegimeLabel::EC);
  CHECK(classify_regime(p, 1.0, 30) == RegimeLabel::BC);
  CHECK(classify_regime(p, 4.0, 30) == RegimeLabel::IC);
  CHECK(classify_regime(p, 1.0, 100) == RegimeLabel::BU);
  CHECK(classify_regime(p, 0.2, 100) == RegimeLabel::EU);
  // Exact thresholds belong to the split regime.
  const ThresholdSet t = compute_thresholds(p, 30);
  CHECK(classify_regime(p, *t.I_f, 30) == RegimeLabel::BC);
  CHECK(classify_regime(p, *t.I_h, 30) == RegimeLabel::BC);
}

TEST_CASE("classification matches the solver") {
  test::Draws d(19);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const MarketParams p = test::random_params(d);
    const double K_t = compute_thresholds(p, 0).K_t;
    for (int j = 0; j < 10; ++j) {
      const double I = std::exp(d.uniform(-2.5, 2.5));
      const double K = d.uniform(0.01, 1.2) * K_t;
      CHECK(classify_regime(p, I, K) == solve_constrained(p, I, K).regime);
      ++checked;
    }
  }
  CHECK(checked == 400);
}

TEST_CASE("ordering cases") {
  const OrderingReport base = threshold_ordering_case(test::baseline());
  CHECK(base.ordering == OrderingCase::home_first);
  CHECK(base.K_Q == doctest::Approx(40));

  const MarketParams q = MarketParams::create(100, 40, 0.9, 0.1, 20, 30, 5, 10);
  const OrderingReport other = threshold_ordering_case(q);
  CHECK(other.ordering == OrderingCase::foreign_first);
  CHECK(other.K_h < other.K_Q);
  for (const auto& c : other.supplementary) {
    CHECK_MESSAGE(c.holds(), c.statement);
  }
}

TEST_CASE("diagnostics") {
  const auto diags = closed_form_diagnostics(test::baseline(), 1.0, 20);
  REQUIRE(!diags.empty());
  bool saw_ih = false;
  for (const auto& d : diags) {
    if (d.name.find("alpha_i-mass") != std::string::npos) {
      saw_ih = true;
      CHECK(d.agrees);
    }
  }
  CHECK(saw_ih);
}
