#include "incentives/choice.hpp"

#include <numeric>

namespace incentives {

IncentiveMenu::IncentiveMenu(std::vector<double> amounts) : amounts_(std::move(amounts)) {
  if (amounts_.empty() || amounts_.front() != 0.0)
    throw InputError("IncentiveMenu: the first amount must be $0");
  for (std::size_t i = 1; i < amounts_.size(); ++i)
    if (!(amounts_[i] > amounts_[i - 1])) throw InputError("IncentiveMenu: amounts must be strictly increasing");
}

double IncentiveMenu::mean_cost() const {
  return std::accumulate(amounts_.begin(), amounts_.end(), 0.0) / static_cast<double>(amounts_.size());
}

void ChoiceCoefficients::validate() const {
  if (!(theta_tt < 0.0)) throw InputError("ChoiceCoefficients: theta_tt must be negative");
  if (!(theta_inc > 0.0)) throw InputError("ChoiceCoefficients: theta_inc must be positive");
}

Vector free_flow_estimates(const RouteSet& routes) {
  Vector t(routes.num_routes());
  for (Index r = 0; r < routes.num_routes(); ++r) t(r) = routes.routes[static_cast<std::size_t>(r)].free_flow_time;
  return t;
}

ChoiceProbabilities build_choice_matrix(const RouteSet& routes, const IncentiveMenu& menu,
                                        const Vector& travel_time_estimates,
                                        const ChoiceCoefficients& coeffs) {
  coeffs.validate();
  const Index num_routes = routes.num_routes();
  if (travel_time_estimates.size() != num_routes)
    throw InputError("build_choice_matrix: need one travel-time estimate per route");

  ChoiceProbabilities out;
  out.num_routes = num_routes;
  out.num_incentives = menu.size();
  out.P = Matrix::Zero(num_routes, out.num_columns());

  for (const auto& od_routes : routes.route_of_od) {
    const auto k = static_cast<Index>(od_routes.size());
    Vector times(k);
    for (Index a = 0; a < k; ++a) times(a) = travel_time_estimates(od_routes[static_cast<std::size_t>(a)]);
    for (Index a = 0; a < k; ++a) {
      const Index offered = od_routes[static_cast<std::size_t>(a)];
      for (Index i = 0; i < menu.size(); ++i) {
        const Vector probs = acceptance_probabilities(times, a, menu.amount(i), coeffs);
        const Index col = out.column(offered, i);
        for (Index b = 0; b < k; ++b) out.P(od_routes[static_cast<std::size_t>(b)], col) = probs(b);
      }
    }
  }
  return out;
}

}  // namespace incentives
