#include "incentives/oracle.hpp"

#include <cmath>
#include <sstream>

#include "incentives/errors.hpp"
#include "incentives/scenario1.hpp"

namespace incentives {

double oracle_search_size(const IncentiveProblem& problem) {
  double size = 1.0;
  for (Index od : problem.demand.driver_to_od)
    size *= static_cast<double>(columns_of_od(problem.routes, problem.choice, od).size());
  return size;
}

OracleResult brute_force_oracle(const IncentiveProblem& problem, const OracleConfig& config) {
  if (!(config.budget >= 0.0)) throw InputError("oracle: budget must be >= 0");
  const double size = oracle_search_size(problem);
  if (size > config.max_assignments) {
    std::ostringstream msg;
    msg << "oracle: instance too large, " << size << " assignments exceed the limit of " << config.max_assignments;
    throw InputError(msg.str());
  }

  const Index drivers = problem.num_drivers();
  std::vector<std::vector<Index>> choices;
  for (Index od : problem.demand.driver_to_od) choices.push_back(columns_of_od(problem.routes, problem.choice, od));

  const Vector free_flow = expected_free_flow_per_column(problem);
  const Index links = problem.net.num_links();
  Vector limit(problem.A.rows());
  for (Index e = 0; e < limit.size(); ++e)
    limit(e) = config.alpha * problem.net.capacity_limits()(e % links) - problem.background(e);

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(static_cast<std::size_t>(drivers), 0);
  Vector u(problem.num_columns());

  // Odometer over pick, last driver fastest: visits offer vectors in
  // lexicographic order.
  while (true) {
    best.enumerated += 1.0;
    u.setZero();
    double cost = 0.0;
    for (Index n = 0; n < drivers; ++n) {
      const Index col = choices[static_cast<std::size_t>(n)][pick[static_cast<std::size_t>(n)]];
      u(col) += 1.0;
      cost += problem.cost(col);
    }
    bool ok = cost <= config.budget + 1e-9;
    double value = 0.0;
    if (ok && config.objective == OracleObjective::Linear) {
      ok = ((problem.A * u).array() <= limit.array() + 1e-9).all();
      value = free_flow.dot(u);
    } else if (ok) {
      value = total_travel_time(problem.volume_for_counts(u), problem.net);
    }
    if (ok) {
      ++best.feasible;
      if (value < best.objective) {
        best.objective = value;
        best.offers.clear();
        for (Index n = 0; n < drivers; ++n)
          best.offers.push_back(choices[static_cast<std::size_t>(n)][pick[static_cast<std::size_t>(n)]]);
      }
    }

    Index n = drivers - 1;
    for (; n >= 0; --n) {
      auto& p = pick[static_cast<std::size_t>(n)];
      if (++p < choices[static_cast<std::size_t>(n)].size()) break;
      p = 0;
    }
    if (n < 0) break;
  }

  if (best.feasible == 0) throw InfeasibleError("oracle: no feasible assignment");
  best.S = assignment_from_offers(problem.num_columns(), best.offers);
  return best;
}

}  // namespace incentives
