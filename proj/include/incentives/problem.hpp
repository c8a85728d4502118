#pragma once

#include <vector>

#include "incentives/choice.hpp"
#include "incentives/flow.hpp"
#include "incentives/network.hpp"
#include "incentives/types.hpp"

namespace incentives {

/// Per-OD demand feeding one problem instance.
struct OdDemand {
  Index eligible = 0;             // first-interval drivers who may receive offers
  Index ineligible = 0;           // first-interval drivers held at the $0 offer
  std::vector<Index> later;       // later[k] drivers entering at unit k + 2, no offers
};

/// Everything both incentive models consume: routes, choice matrix P,
/// location matrix R, A = R·P, the decision-driver demand (D, q), the offer
/// cost vector c and the fixed background volume that non-decision traffic
/// adds to every (link, time) entry.
struct IncentiveProblem {
  RoadNetwork net;
  RouteSet routes;
  IncentiveMenu menu;
  ChoiceProbabilities choice;
  LocationMatrix location;
  Matrix A;
  DemandModel demand;
  Vector cost;
  Vector background;

  Index num_columns() const { return choice.num_columns(); }
  Index num_drivers() const { return demand.num_drivers(); }
  /// v̂ for a (possibly relaxed) column-count vector u = S·1.
  Vector volume_for_counts(const Vector& u) const { return A * u + background; }
  Vector volume_for(const Matrix& S) const;
  /// Counts u when every decision driver holds the $0 offer.
  Vector baseline_counts() const;
  /// Binary S with every decision driver on the $0 offer.
  Matrix baseline_assignment() const;
  /// Relaxed S spreading every decision driver evenly over its OD's columns.
  Matrix uniform_assignment() const;
};

struct ProblemOptions {
  Index horizon = 3;
  double unit_length = 0.2;
  ChoiceCoefficients coeffs;
  /// Use BPR route times under the no-incentive volume as T̂ instead of
  /// free-flow times.
  bool congestion_aware_estimates = false;
  Vector extra_background;  // optional, length |E|·|T|
};

IncentiveProblem assemble_problem(RoadNetwork net, RouteSet routes, IncentiveMenu menu,
                                  const std::vector<OdDemand>& demand, const ProblemOptions& options);

}  // namespace incentives
