#pragma once

#include <vector>

#include "incentives/errors.hpp"
#include "incentives/network.hpp"
#include "incentives/types.hpp"

namespace incentives {

/// Dollar amounts that may be attached to a route offer. amounts[0] is the
/// $0 (no-incentive) option; the cost of offering amounts[i] is amounts[i].
class IncentiveMenu {
 public:
  IncentiveMenu() : amounts_{0.0} {}
  explicit IncentiveMenu(std::vector<double> amounts);

  const std::vector<double>& amounts() const { return amounts_; }
  Index size() const { return static_cast<Index>(amounts_.size()); }
  double amount(Index i) const { return amounts_.at(static_cast<std::size_t>(i)); }
  /// η_i
  double cost(Index i) const { return amount(i); }
  double mean_cost() const;

 private:
  std::vector<double> amounts_;
};

/// Logit utility θ_tt · travel_time + θ_inc · incentive.
struct ChoiceCoefficients {
  double theta_tt = -0.086;  // per hour
  double theta_inc = 0.7;    // per dollar

  void validate() const;
};

/// Softmax over routes of one OD pair when `amount` dollars are offered on
/// route `offered`.
template <typename Derived>
VectorX<typename Derived::Scalar> acceptance_probabilities(
    const Eigen::MatrixBase<Derived>& travel_times, Index offered,
    typename Derived::Scalar amount, const ChoiceCoefficients& coeffs) {
  using Scalar = typename Derived::Scalar;
  const Index n = travel_times.size();
  if (n == 0) throw InputError("acceptance_probabilities: empty route set");
  if (offered < 0 || offered >= n) throw InputError("acceptance_probabilities: offered route out of range");
  if (!(amount >= Scalar(0))) throw InputError("acceptance_probabilities: negative incentive");
  if (!(travel_times.array() > Scalar(0)).all())
    throw InputError("acceptance_probabilities: travel times must be positive");

  VectorX<Scalar> utility = Scalar(coeffs.theta_tt) * travel_times;
  utility(offered) += Scalar(coeffs.theta_inc) * amount;
  const Scalar peak = utility.maxCoeff();
  VectorX<Scalar> weights = (utility.array() - peak).exp().matrix();
  return weights / weights.sum();
}

/// P: |R| rows by |R|·|I| columns. Column (route j, incentive i) sits at
/// index i·|R| + j and holds the route distribution of j's OD pair when
/// amount i is offered on j; rows of other OD pairs are zero.
struct ChoiceProbabilities {
  Matrix P;
  Index num_routes = 0;
  Index num_incentives = 0;

  Index column(Index route, Index incentive) const { return incentive * num_routes + route; }
  Index route_of_column(Index col) const { return col % num_routes; }
  Index incentive_of_column(Index col) const { return col / num_routes; }
  Index num_columns() const { return num_routes * num_incentives; }
};

/// Fills every (route, incentive) column of P from per-route travel-time
/// estimates T̂.
ChoiceProbabilities build_choice_matrix(const RouteSet& routes, const IncentiveMenu& menu,
                                        const Vector& travel_time_estimates,
                                        const ChoiceCoefficients& coeffs);

/// Free-flow route times, the default T̂.
Vector free_flow_estimates(const RouteSet& routes);

}  // namespace incentives
