#include <gtest/gtest.h>

#include <random>

#include "incentives/choice.hpp"
#include "incentives/synthetic.hpp"
#include "oracles.hpp"

using namespace incentives;

TEST(IncentiveMenu, Validation) {
  EXPECT_THROW(IncentiveMenu({1.0, 2.0}), InputError);
  EXPECT_THROW(IncentiveMenu({0.0, 2.0, 2.0}), InputError);
  EXPECT_THROW(IncentiveMenu(std::vector<double>{}), InputError);
  const IncentiveMenu m({0.0, 2.0, 10.0});
  EXPECT_EQ(m.size(), 3);
  EXPECT_DOUBLE_EQ(m.cost(2), 10.0);
  EXPECT_DOUBLE_EQ(m.mean_cost(), 4.0);
}

TEST(AcceptanceProbabilities, TwoRouteExample) {
  Vector tt(2);
  tt << 0.2, 0.3;
  const Vector none = acceptance_probabilities(tt, 0, 0.0, ChoiceCoefficients{});
  EXPECT_NEAR(none(0), 0.50, 0.005);
  EXPECT_NEAR(none(1), 0.50, 0.005);
  const Vector five = acceptance_probabilities(tt, 0, 5.0, ChoiceCoefficients{});
  EXPECT_NEAR(five(0), 0.97, 0.005);
  EXPECT_NEAR(five(1), 0.03, 0.005);
}

TEST(AcceptanceProbabilities, SingleRouteIsCertain) {
  Vector tt(1);
  tt << 0.4;
  EXPECT_DOUBLE_EQ(acceptance_probabilities(tt, 0, 10.0, ChoiceCoefficients{})(0), 1.0);
}

TEST(AcceptanceProbabilities, Errors) {
  Vector tt(2);
  tt << 0.2, 0.3;
  EXPECT_THROW(acceptance_probabilities(Vector(0), 0, 0.0, ChoiceCoefficients{}), InputError);
  EXPECT_THROW(acceptance_probabilities(tt, 2, 0.0, ChoiceCoefficients{}), InputError);
  EXPECT_THROW(acceptance_probabilities(tt, 0, -1.0, ChoiceCoefficients{}), InputError);
  Vector bad(2);
  bad << 0.2, 0.0;
  EXPECT_THROW(acceptance_probabilities(bad, 0, 0.0, ChoiceCoefficients{}), InputError);
}

TEST(AcceptanceProbabilities, MatchesDirectLogit) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.05, 2.0);
  for (int k = 0; k < 50; ++k) {
    const Index n = 1 + static_cast<Index>(rng() % 4);
    Vector tt(n);
    std::vector<double> times;
    for (Index r = 0; r < n; ++r) times.push_back(tt(r) = U(rng));
    const Index offered = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    const double amount = 10.0 * U(rng);
    const Vector p = acceptance_probabilities(tt, offered, amount, ChoiceCoefficients{});
    const auto ref = oracle::logit_direct(times, offered, amount, -0.086, 0.7);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    for (Index r = 0; r < n; ++r) EXPECT_NEAR(p(r), ref[static_cast<std::size_t>(r)], 1e-12);
  }
}

TEST(AcceptanceProbabilities, MonotoneInOwnIncentive) {
  Vector tt(3);
  tt << 0.3, 0.2, 0.5;
  double prev = 0.0;
  for (double amount : {0.0, 1.0, 2.0, 5.0, 10.0}) {
    const double p = acceptance_probabilities(tt, 2, amount, ChoiceCoefficients{})(2);
    EXPECT_GT(p, prev);
    prev = p;
  }
}

TEST(ChoiceMatrix, LayoutAndColumnSums) {
  const Scenario s = preset_scenario("appendix-c");
  const RouteSet rs = enumerate_routes(s.net, s.od_pairs, 4);
  const ChoiceProbabilities P = build_choice_matrix(rs, s.menu, free_flow_estimates(rs), s.coeffs);
  ASSERT_EQ(P.P.rows(), 2);
  ASSERT_EQ(P.P.cols(), 4);
  EXPECT_EQ(P.column(1, 1), 3);
  EXPECT_EQ(P.route_of_column(3), 1);
  EXPECT_EQ(P.incentive_of_column(3), 1);
  for (Index c = 0; c < P.P.cols(); ++c) EXPECT_NEAR(P.P.col(c).sum(), 1.0, 1e-12);
  EXPECT_NEAR(P.P(0, 2), 0.97, 0.005);
  EXPECT_NEAR(P.P(1, 3), 0.97, 0.005);
}

TEST(ChoiceMatrix, OtherOdRowsAreZero) {
  SyntheticSpec spec;
  spec.hubs = 4;
  const Scenario s = generate_synthetic(spec);
  const RouteSet rs = enumerate_routes(s.net, s.od_pairs, 4);
  const ChoiceProbabilities P = build_choice_matrix(rs, s.menu, free_flow_estimates(rs), s.coeffs);
  for (Index c = 0; c < P.num_columns(); ++c) {
    const Index od = rs.od_of_route[static_cast<std::size_t>(P.route_of_column(c))];
    for (Index r = 0; r < rs.num_routes(); ++r)
      if (rs.od_of_route[static_cast<std::size_t>(r)] != od) {
        EXPECT_EQ(P.P(r, c), 0.0);
      }
  }
}
