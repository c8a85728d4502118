#include "incentives/problem.hpp"

namespace incentives {

Vector IncentiveProblem::volume_for(const Matrix& S) const {
  return expected_volume(A, S) + background;
}

Vector IncentiveProblem::baseline_counts() const {
  Vector u = Vector::Zero(num_columns());
  for (Index k = 0; k < routes.num_od_pairs(); ++k) u(no_offer_column(routes, choice, k)) += demand.q(k);
  return u;
}

Matrix IncentiveProblem::baseline_assignment() const {
  std::vector<Index> offers;
  for (Index od : demand.driver_to_od) offers.push_back(no_offer_column(routes, choice, od));
  return assignment_from_offers(num_columns(), offers);
}

Matrix IncentiveProblem::uniform_assignment() const {
  Matrix S = Matrix::Zero(num_columns(), num_drivers());
  for (Index n = 0; n < num_drivers(); ++n) {
    const auto cols = columns_of_od(routes, choice, demand.driver_to_od[static_cast<std::size_t>(n)]);
    for (Index col : cols) S(col, n) = 1.0 / static_cast<double>(cols.size());
  }
  return S;
}

namespace {

// Volume of all drivers that never receive offers, for a given P.
Vector fixed_volume(const RoadNetwork& net, const RouteSet& routes, const ChoiceProbabilities& choice,
                    const Matrix& A, const std::vector<OdDemand>& demand, const ProblemOptions& options) {
  Vector v = Vector::Zero(A.rows());
  for (Index k = 0; k < routes.num_od_pairs(); ++k) {
    const OdDemand& d = demand[static_cast<std::size_t>(k)];
    const Index col = no_offer_column(routes, choice, k);
    v += static_cast<double>(d.ineligible) * A.col(col);
    for (std::size_t e = 0; e < d.later.size(); ++e) {
      if (d.later[e] == 0) continue;
      const auto entrance = static_cast<Index>(e) + 2;
      if (entrance > options.horizon) break;
      const LocationMatrix shifted =
          build_location_matrix(net, routes, options.horizon, options.unit_length, entrance);
      v += static_cast<double>(d.later[e]) * (shifted.R * choice.P.col(col));
    }
  }
  if (options.extra_background.size() > 0) {
    if (options.extra_background.size() != v.size())
      throw InputError("assemble_problem: background volume must have |E|*|T| entries");
    if ((options.extra_background.array() < 0.0).any())
      throw InputError("assemble_problem: background volume must be non-negative");
    v += options.extra_background;
  }
  return v;
}

}  // namespace

IncentiveProblem assemble_problem(RoadNetwork net, RouteSet routes, IncentiveMenu menu,
                                  const std::vector<OdDemand>& demand, const ProblemOptions& options) {
  if (static_cast<Index>(demand.size()) != routes.num_od_pairs())
    throw InputError("assemble_problem: need one demand entry per OD pair");

  IncentiveProblem p;
  p.location = build_location_matrix(net, routes, options.horizon, options.unit_length);
  p.choice = build_choice_matrix(routes, menu, free_flow_estimates(routes), options.coeffs);
  p.A = compose_A(p.location, p.choice);

  std::vector<Index> eligible;
  for (const OdDemand& d : demand) eligible.push_back(d.eligible);
  p.demand = build_demand_model(routes, p.choice, eligible);

  if (options.congestion_aware_estimates) {
    Vector base = fixed_volume(net, routes, p.choice, p.A, demand, options);
    for (Index k = 0; k < routes.num_od_pairs(); ++k)
      base += p.demand.q(k) * p.A.col(no_offer_column(routes, p.choice, k));
    const Vector estimates = congested_route_times(net, p.location, base);
    p.choice = build_choice_matrix(routes, menu, estimates, options.coeffs);
    p.A = compose_A(p.location, p.choice);
  }

  p.background = fixed_volume(net, routes, p.choice, p.A, demand, options);
  p.cost.resize(p.choice.num_columns());
  for (Index col = 0; col < p.choice.num_columns(); ++col) p.cost(col) = menu.cost(p.choice.incentive_of_column(col));

  p.net = std::move(net);
  p.routes = std::move(routes);
  p.menu = std::move(menu);
  return p;
}

}  // namespace incentives
