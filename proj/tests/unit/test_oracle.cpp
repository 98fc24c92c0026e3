#include <doctest.h>

#include <cmath>

#include "fxd/capacity.hpp"
#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"
#include "fxd/oracle.hpp"
#include "support.hpp"

using namespace fxd;

TEST_CASE("grid oracle reproduces the baseline") {
  const MarketParams p = test::baseline();
  const EquilibriumOutcome g = grid_equilibrium(p, 1.0, kUnlimited, 1e-3);
  CHECK(std::abs(g.p_ee - 60) < 2e-3);
  CHECK(std::abs(g.p_ei - 172.0 / 3) < 2e-3);
  CHECK(std::abs(g.p_ii - 178.0 / 3) < 2e-3);
}

TEST_CASE("decoupled markets settle at once") {
  MarketParams p = test::baseline();
  p.theta = 0.0;
  CHECK(grid_equilibrium(p, 1.0, kUnlimited, 1e-3).iterations <= 2);
}

TEST_CASE("constrained oracle") {
  const MarketParams p = test::baseline();
  const EquilibriumOutcome ic = grid_equilibrium(p, 4.0, 30, 1e-3);
  CHECK(ic.q_ee == 0);
  const EquilibriumOutcome bc = grid_equilibrium(p, 1.0, 30, 1e-3);
  const EquilibriumOutcome exact = solve_constrained(p, 1.0, 30);
  CHECK(std::abs(bc.p_ee - exact.p_ee) < 2e-3);
  CHECK(std::abs(bc.p_ei - exact.p_ei) < 2e-3);
  CHECK(std::abs(bc.p_ii - exact.p_ii) < 2e-3);
  CHECK(bc.q_ee + bc.q_ei <= 30 + 1e-9);
}

TEST_CASE("Monte Carlo estimator") {
  const MarketParams p = test::baseline();
  const GbmModel flat{1.0, 0.05, 0.0, 1.0};
  const MonteCarloEstimate det = mc_expected_profit(p, flat, 30, 1000, 1);
  CHECK(det.standard_error == 0);
  CHECK(det.mean == doctest::Approx(expected_profit(p, flat, 30)).epsilon(1e-14));

  const GbmModel m = test::baseline_gbm();
  const MonteCarloEstimate a = mc_expected_profit(p, m, 30, 5000, 9);
  const MonteCarloEstimate b = mc_expected_profit(p, m, 30, 5000, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.samples == 5000);
  CHECK_THROWS(mc_expected_profit(p, m, 30, 999, 9));
}
