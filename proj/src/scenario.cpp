#include "incentives/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "incentives/errors.hpp"

namespace incentives {

Index Scenario::total_drivers() const {
  return std::accumulate(demand.begin(), demand.end(), Index{0});
}

void Scenario::validate() const {
  if (od_pairs.empty()) throw InputError("scenario: no OD pairs");
  if (demand.size() != od_pairs.size()) throw InputError("scenario: need one demand entry per OD pair");
  if (!later_demand.empty() && later_demand.size() != od_pairs.size())
    throw InputError("scenario: later_demand needs one entry per OD pair");
  for (Index d : demand)
    if (d < 0) throw InputError("scenario: negative demand");
  for (const auto& l : later_demand)
    for (Index d : l)
      if (d < 0) throw InputError("scenario: negative later demand");
  for (const OdPair& od : od_pairs)
    if (!net.has_node(od.origin) || !net.has_node(od.destination))
      throw InputError("scenario: OD pair references an unknown node");
  if (horizon < 1) throw InputError("scenario: horizon must be >= 1");
  if (!(unit_length > 0.0)) throw InputError("scenario: unit_length_hours must be positive");
  if (max_routes < 1) throw InputError("scenario: max_routes must be >= 1");
  if (background.size() > 0 && background.size() != net.num_links() * horizon)
    throw InputError("scenario: background_volume must have |E|*horizon entries");
  coeffs.validate();
}

std::vector<Index> select_cohort(Index num_drivers, double penetration, std::uint64_t seed) {
  if (!(penetration > 0.0 && penetration <= 1.0)) throw InputError("select_cohort: penetration must be in (0, 1]");
  if (num_drivers < 0) throw InputError("select_cohort: negative driver count");
  std::vector<Index> perm(static_cast<std::size_t>(num_drivers));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit draw so the order does not depend on the
  // standard library's shuffle.
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  const auto take = static_cast<std::size_t>(std::floor(penetration * static_cast<double>(num_drivers) + 1e-9));
  std::vector<Index> cohort(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(take));
  std::sort(cohort.begin(), cohort.end());
  return cohort;
}

IncentiveProblem build_problem(const Scenario& s, double penetration, std::uint64_t seed) {
  s.validate();
  RouteSet routes = enumerate_routes(s.net, s.od_pairs, s.max_routes);

  std::vector<Index> driver_od;
  for (std::size_t k = 0; k < s.demand.size(); ++k)
    for (Index n = 0; n < s.demand[k]; ++n) driver_od.push_back(static_cast<Index>(k));

  std::vector<OdDemand> demand(s.od_pairs.size());
  for (std::size_t k = 0; k < s.od_pairs.size(); ++k) {
    demand[k].ineligible = s.demand[k];
    if (!s.later_demand.empty()) demand[k].later = s.later_demand[k];
  }
  for (Index n : select_cohort(static_cast<Index>(driver_od.size()), penetration, seed)) {
    OdDemand& d = demand[static_cast<std::size_t>(driver_od[static_cast<std::size_t>(n)])];
    ++d.eligible;
    --d.ineligible;
  }

  ProblemOptions options;
  options.horizon = s.horizon;
  options.unit_length = s.unit_length;
  options.coeffs = s.coeffs;
  options.congestion_aware_estimates = s.congestion_aware_estimates;
  options.extra_background = s.background;
  return assemble_problem(s.net, std::move(routes), s.menu, demand, options);
}

}  // namespace incentives
