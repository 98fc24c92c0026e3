#include <doctest.h>

#include <cmath>

#include "fxd/equilibrium.hpp"
#include "fxd/error.hpp"
#include "fxd/oracle.hpp"
#include "fxd/thresholds.hpp"
#include "support.hpp"

using namespace fxd;

TEST_CASE("best responses") {
  const MarketParams p = test::baseline();
  for (double I : {0.5, 1.0, 7.0}) {
    CHECK(entrant_best_response(p, I, 59.0).p_ee == 60);
  }
  CHECK(entrant_best_response(p, 1.0, 178.0 / 3).p_ei == doctest::Approx(172.0 / 3));
  CHECK(incumbent_best_response(p, 172.0 / 3) == doctest::Approx(178.0 / 3));
  CHECK(incumbent_best_response(p, 0.0) == 45);

  MarketParams q = p;
  q.theta = 0.0;
  CHECK(entrant_best_response(q, 1.0, 80).p_ei == doctest::Approx(42.5));
  CHECK(incumbent_best_response(q, 80) == 45);
  // Below break-even the entrant posts its foreign choke price.
  CHECK(entrant_best_response(p, 0.1, 50).p_ei == doctest::Approx(60 + 0.5 * 50));
  CHECK_THROWS_AS(entrant_best_response(p, 0.0, 50), DomainError);
}

TEST_CASE("unconstrained baseline") {
  const MarketParams p = test::baseline();
  const EquilibriumOutcome eq = solve_unconstrained(p, 1.0);
  CHECK(eq.p_ee == doctest::Approx(60));
  CHECK(eq.p_ei == doctest::Approx(172.0 / 3));
  CHECK(eq.p_ii == doctest::Approx(178.0 / 3));
  CHECK(eq.q_ee == doctest::Approx(40));
  CHECK(eq.q_ei == doctest::Approx(97.0 / 3));
  CHECK(eq.q_ii == doctest::Approx(88.0 / 3));
  CHECK(eq.profit_e == doctest::Approx(1600 + (172.0 / 3 - 25) * 97.0 / 3));
  CHECK(eq.profit_i == doctest::Approx(88.0 / 3 * 88.0 / 3));
  CHECK(eq.regime == RegimeLabel::BU);
  CHECK(eq.lambda == 0);

  // Both replies reproduce the solution.
  CHECK(entrant_best_response(p, 1.0, eq.p_ii).p_ei == doctest::Approx(eq.p_ei).epsilon(1e-12));
  CHECK(incumbent_best_response(p, eq.p_ei) == doctest::Approx(eq.p_ii).epsilon(1e-12));
}

TEST_CASE("unconstrained below break-even") {
  const MarketParams p = test::baseline();
  const EquilibriumOutcome eq = solve_unconstrained(p, 0.2);
  CHECK(eq.regime == RegimeLabel::EU);
  CHECK(eq.q_ei == 0);
  CHECK(eq.profit_e == doctest::Approx(1600));

  MarketParams q = p;
  q.theta = 0.0;
  CHECK(solve_unconstrained(q, 0.3).regime == RegimeLabel::EU);
  const EquilibriumOutcome dec = solve_unconstrained(q, 1.0);
  CHECK(dec.p_ei == doctest::Approx(42.5));
  CHECK(dec.p_ii == doctest::Approx(45));
  CHECK(dec.q_ei == doctest::Approx(17.5));
}

TEST_CASE("fixed point holds on random draws") {
  test::Draws d(3);
  for (int i = 0; i < 200; ++i) {
    const MarketParams p = test::random_params(d);
    const double I = std::exp(d.uniform(-2.0, 2.0));
    const EquilibriumOutcome eq = solve_unconstrained(p, I);
    CHECK(entrant_best_response(p, I, eq.p_ii).p_ei == doctest::Approx(eq.p_ei).epsilon(1e-10));
    CHECK(incumbent_best_response(p, eq.p_ei) == doctest::Approx(eq.p_ii).epsilon(1e-10));
    CHECK(eq.q_ei >= 0);
    CHECK(eq.q_ii >= 0);
  }
}

TEST_CASE("constrained baseline") {
  const MarketParams p = test::baseline();
  const EquilibriumOutcome slack = solve_constrained(p, 1.0, 100);
  const EquilibriumOutcome free = solve_unconstrained(p, 1.0);
  CHECK(slack.p_ei == free.p_ei);
  CHECK(slack.lambda == 0);
  CHECK(shadow_price(p, 1.0, 100) == 0);

  const EquilibriumOutcome bc = solve_constrained(p, 1.0, 30);
  CHECK(bc.regime == RegimeLabel::BC);
  CHECK(std::abs(bc.q_ee + bc.q_ei - 30) < 1e-9);
  CHECK(bc.lambda > 0);

  const EquilibriumOutcome ic = solve_constrained(p, 4.0, 30);
  CHECK(ic.regime == RegimeLabel::IC);
  CHECK(ic.q_ee == 0);
  CHECK(ic.q_ei == doctest::Approx(30));
  CHECK(ic.profit_e == doctest::Approx(profit_ic(p, 4.0, 30)));
  CHECK(ic.profit_e == doctest::Approx(6450));

  const EquilibriumOutcome ec = solve_constrained(p, 0.3, 30);
  CHECK(ec.regime == RegimeLabel::EC);
  CHECK(ec.profit_e == doctest::Approx(profit_ec(p, 30)));

  CHECK_THROWS_AS(solve_constrained(p, 1.0, -1), DomainError);
  CHECK_THROWS_AS(solve_constrained(p, -1.0, 10), DomainError);
}

TEST_CASE("shadow price is the equilibrium derivative") {
  const MarketParams p = test::baseline();
  for (double I : {0.4, 1.0, 2.0, 4.0}) {
    for (double K : {10.0, 30.0, 50.0}) {
      const double h = 1e-4 * K;
      const double fd =
          (solve_constrained(p, I, K + h).profit_e - solve_constrained(p, I, K - h).profit_e) /
          (2 * h);
      CHECK(shadow_price(p, I, K) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("prices are continuous where the constraint starts to bind") {
  const MarketParams p = test::baseline();
  const EquilibriumOutcome free = solve_unconstrained(p, 1.0);
  const double edge = free.q_ee + free.q_ei;
  for (double gap : {1e-3, 1e-5, 1e-7}) {
    const EquilibriumOutcome in = solve_constrained(p, 1.0, edge - gap);
    CHECK(std::abs(in.p_ei - free.p_ei) < 10 * gap);
    CHECK(std::abs(in.p_ii - free.p_ii) < 10 * gap);
    CHECK(in.lambda < 10 * gap);
  }
}

TEST_CASE("single-market profits") {
  const MarketParams p = test::baseline();
  CHECK(profit_ec(p, 30) == 1500);
  CHECK(profit_ec(p, 0) == 0);
  CHECK(profit_ec(p, 40) == 1600);
  CHECK_THROWS_AS(profit_ec(p, 81), DomainError);
  CHECK(profit_ic(p, 4.0, 0) == 0);
  // Zero-profit root of the IC margin.
  const double root = p.export_cost() * (2 - 0.25) / (p.foreign_mass() - 2 * 30);
  CHECK(std::abs(profit_ic(p, root, 30)) < 1e-9);
}

TEST_CASE("constrained replies") {
  const MarketParams p = test::baseline();
  const EntrantReply r = entrant_constrained_reply(p, 1.0, 60, 30);
  CHECK(r.allocation == Allocation::split);
  CHECK(r.q_ee + r.q_ei == doctest::Approx(30));
  // Equal marginal value in both markets.
  CHECK(80 - 2 * r.q_ee == doctest::Approx(1.0 * (60 + 30) - 25 - 2 * r.q_ei));
  CHECK(entrant_constrained_reply(p, 1.0, 60, kUnlimited).allocation == Allocation::slack);
  CHECK(entrant_constrained_reply(p, 0.1, 60, 10).allocation == Allocation::home_only);
  CHECK(entrant_constrained_reply(p, 10.0, 60, 10).allocation == Allocation::foreign_only);
}

TEST_CASE("to_string") {
  CHECK(to_string(RegimeLabel::EU) == "EU");
  CHECK(to_string(RegimeLabel::BC) == "BC");
}
