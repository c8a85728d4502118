#include <gtest/gtest.h>

#include <random>

#include "incentives/scenario1.hpp"
#include "incentives/synthetic.hpp"
#include "oracles.hpp"

using namespace incentives;

namespace {

IncentiveProblem two_route_problem() { return build_problem(preset_scenario("appendix-c"), 1.0, 0); }

// Large capacity limits so the linear model is only budget-bound.
IncentiveProblem loose_problem(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.seed = seed;
  spec.hubs = 3;
  spec.richness = 3;
  spec.demand = 3;
  spec.tightness = 0.2;
  return build_problem(generate_synthetic(spec), 1.0, 0);
}

}  // namespace

TEST(Scenario1, ZeroBudgetKeepsEveryoneOnFreeOffers) {
  const IncentiveProblem p = two_route_problem();
  Scenario1Config cfg;
  cfg.alpha = 10.0;
  const Scenario1Result r = solve_scenario1(p, cfg, exact_mip_options());
  EXPECT_EQ(r.cost_used, 0.0);
  for (Index col : r.offers) EXPECT_EQ(p.cost(col), 0.0);
  const Vector ff = expected_free_flow_per_column(p);
  EXPECT_NEAR(r.objective, 2.0 * ff(0), 1e-12);
  EXPECT_TRUE(is_feasible_assignment(r.S, p.demand, p.routes, p.choice, true));
}

TEST(Scenario1, BudgetBuysTheShortRoute) {
  const IncentiveProblem p = two_route_problem();
  Scenario1Config cfg;
  cfg.alpha = 10.0;
  cfg.budget = 10.0;
  const Scenario1Result r = solve_scenario1(p, cfg, exact_mip_options());
  EXPECT_EQ(r.cost_used, 10.0);
  for (Index col : r.offers) EXPECT_EQ(col, p.choice.column(0, 1));
}

TEST(Scenario1, ExpectedFreeFlowFromRAndP) {
  const IncentiveProblem p = two_route_problem();
  const Vector ff = expected_free_flow_per_column(p);
  // Each route's full length counts inside the horizon.
  const double p_short = p.choice.P(0, 0);
  EXPECT_NEAR(ff(0), p_short * 0.2 + (1 - p_short) * 0.3, 1e-12);
}

TEST(Scenario1, MatchesEnumerationOnSmallInstances) {
  std::mt19937_64 rng(31);
  int solved = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const oracle::TinyInstance inst = oracle::random_tiny_instance(rng);
    const IncentiveProblem p = build_problem(inst.scenario, 1.0, 0);
    Scenario1Config cfg;
    cfg.budget = inst.budget;
    cfg.alpha = inst.alpha;
    const auto ref = oracle::linear_by_enumeration(p, inst.budget, inst.alpha);
    if (!ref) {
      EXPECT_THROW(solve_scenario1(p, cfg, exact_mip_options()), InfeasibleError);
      continue;
    }
    const Scenario1Result r = solve_scenario1(p, cfg, exact_mip_options());
    EXPECT_NEAR(r.objective, *ref, 1e-6) << "trial " << trial;
    ++solved;
  }
  EXPECT_GT(solved, 5);
}

TEST(Scenario1, ZeroAlphaIsInfeasibleAndNamesRows) {
  const IncentiveProblem p = two_route_problem();
  Scenario1Config cfg;
  cfg.alpha = 0.0;
  try {
    solve_scenario1(p, cfg);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    ASSERT_FALSE(e.rows().empty());
    EXPECT_EQ(e.rows().front().rfind("capacity[", 0), 0u);
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
}

TEST(Scenario1, ObjectiveNonIncreasingInBudget) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const IncentiveProblem p = loose_problem(seed);
    double prev = std::numeric_limits<double>::infinity();
    for (double budget : {0.0, 2.0, 10.0, 20.0, 60.0}) {
      Scenario1Config cfg;
      cfg.budget = budget;
      cfg.alpha = 10.0;
      const Scenario1Result r = solve_scenario1(p, cfg, exact_mip_options());
      EXPECT_LE(r.objective, prev + 1e-9);
      EXPECT_LE(r.cost_used, budget + 1e-9);
      prev = r.objective;
    }
  }
}

TEST(Scenario1, SolutionSatisfiesEveryRow) {
  const IncentiveProblem p = loose_problem(11);
  Scenario1Config cfg;
  cfg.budget = 14.0;
  cfg.alpha = 10.0;
  const Scenario1Model m = build_scenario1(p, cfg);
  const Scenario1Result r = solve_scenario1(p, cfg, exact_mip_options());
  const Vector x = r.mip.x;
  for (Index i = 0; i < m.lp.num_rows(); ++i) {
    const double lhs = m.lp.rows.row(i).dot(x);
    switch (m.lp.senses[static_cast<std::size_t>(i)]) {
      case RowSense::LessEqual: EXPECT_LE(lhs, m.lp.rhs(i) + 1e-9); break;
      case RowSense::GreaterEqual: EXPECT_GE(lhs, m.lp.rhs(i) - 1e-9); break;
      case RowSense::Equal: EXPECT_NEAR(lhs, m.lp.rhs(i), 1e-9); break;
    }
  }
  EXPECT_TRUE(is_feasible_assignment(r.S, p.demand, p.routes, p.choice, true));
}

TEST(Scenario1, SymmetryRowsKeepOneOptimum) {
  // Two interchangeable drivers: without symmetry rows both orders would be
  // optimal; with them the column indices are non-decreasing.
  const IncentiveProblem p = two_route_problem();
  Scenario1Config cfg;
  cfg.alpha = 10.0;
  cfg.budget = 5.0;
  const Scenario1Result r = solve_scenario1(p, cfg, exact_mip_options());
  ASSERT_EQ(r.offers.size(), 2u);
  EXPECT_LE(r.offers[0], r.offers[1]);
}

TEST(Scenario1, RejectsNegativeInputs) {
  Scenario1Config cfg;
  cfg.budget = -1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg.budget = 0.0;
  cfg.alpha = -1.0;
  EXPECT_THROW(cfg.validate(), InputError);
}
