#include "incentives/scenario1.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "incentives/errors.hpp"

namespace incentives {

void Scenario1Config::validate() const {
  if (!(budget >= 0.0)) throw InputError("Scenario1Config: budget must be >= 0");
  if (!(alpha >= 0.0)) throw InputError("Scenario1Config: alpha must be >= 0");
}

std::string capacity_entry_name(Index entry, Index num_links) {
  std::ostringstream s;
  s << "capacity[t=" << entry / num_links + 1 << ",link=" << entry % num_links << "]";
  return s.str();
}

Vector expected_free_flow_per_column(const IncentiveProblem& problem) {
  const Index horizon = problem.location.horizon;
  Vector omega(problem.A.rows());
  for (Index t = 0; t < horizon; ++t)
    omega.segment(t * problem.net.num_links(), problem.net.num_links()) = problem.net.free_flow_times();
  return problem.A.transpose() * omega;
}

void add_symmetry_rows(LinearProgram& lp, const std::vector<Index>& var_driver,
                       const std::vector<Index>& var_column, const std::vector<Index>& driver_to_od) {
  std::map<Index, Index> previous;  // OD -> last driver seen
  for (std::size_t n = 0; n < driver_to_od.size(); ++n) {
    const Index od = driver_to_od[n];
    auto it = previous.find(od);
    if (it != previous.end()) {
      Vector row = Vector::Zero(lp.num_vars());
      for (std::size_t v = 0; v < var_driver.size(); ++v) {
        const double idx = static_cast<double>(var_column[v]) + 1.0;
        if (var_driver[v] == it->second) row(static_cast<Index>(v)) += idx;
        if (var_driver[v] == static_cast<Index>(n)) row(static_cast<Index>(v)) -= idx;
      }
      lp.add_row(row, RowSense::LessEqual, 0.0, "symmetry");
    }
    previous[od] = static_cast<Index>(n);
  }
}

Scenario1Model build_scenario1(const IncentiveProblem& problem, const Scenario1Config& cfg) {
  cfg.validate();
  Scenario1Model model;
  const auto& demand = problem.demand;

  for (Index n = 0; n < demand.num_drivers(); ++n) {
    for (Index col : columns_of_od(problem.routes, problem.choice, demand.driver_to_od[static_cast<std::size_t>(n)])) {
      model.var_driver.push_back(n);
      model.var_column.push_back(col);
    }
  }
  const auto nv = static_cast<Index>(model.var_driver.size());
  LinearProgram& lp = model.lp;
  lp = LinearProgram(nv);
  lp.upper.setOnes();
  for (Index v = 0; v < nv; ++v) model.binaries.push_back(v);

  const Vector ff = expected_free_flow_per_column(problem);
  for (Index v = 0; v < nv; ++v) lp.objective(v) = ff(model.var_column[static_cast<std::size_t>(v)]);

  // One offer per driver.
  for (Index n = 0; n < demand.num_drivers(); ++n) {
    Vector row = Vector::Zero(nv);
    for (Index v = 0; v < nv; ++v)
      if (model.var_driver[static_cast<std::size_t>(v)] == n) row(v) = 1.0;
    lp.add_row(row, RowSense::Equal, 1.0, "assign[" + std::to_string(n) + "]");
  }

  // Budget, charged per offer.
  {
    Vector row(nv);
    for (Index v = 0; v < nv; ++v) row(v) = problem.cost(model.var_column[static_cast<std::size_t>(v)]);
    lp.add_row(row, RowSense::LessEqual, cfg.budget, "budget");
  }

  // Expected volume within α·v0 at every (time, link).
  const Index links = problem.net.num_links();
  for (Index e = 0; e < problem.A.rows(); ++e) {
    const double limit = cfg.alpha * problem.net.capacity_limits()(e % links) - problem.background(e);
    Vector row(nv);
    for (Index v = 0; v < nv; ++v) row(v) = problem.A(e, model.var_column[static_cast<std::size_t>(v)]);

    // Smallest load the decision drivers can put on this entry.
    double min_load = 0.0;
    for (Index n = 0; n < demand.num_drivers(); ++n) {
      double best = std::numeric_limits<double>::infinity();
      for (Index v = 0; v < nv; ++v)
        if (model.var_driver[static_cast<std::size_t>(v)] == n) best = std::min(best, row(v));
      min_load += best;
    }
    if (min_load > limit + 1e-9) model.violated_entries.push_back(e);
    if (row.cwiseAbs().maxCoeff() == 0.0 && limit >= 0.0) continue;
    model.capacity_entry.push_back(e);
    model.capacity_rows.push_back(lp.add_row(row, RowSense::LessEqual, limit, capacity_entry_name(e, links)));
  }

  add_symmetry_rows(lp, model.var_driver, model.var_column, demand.driver_to_od);
  return model;
}

Scenario1Result solve_scenario1(const IncentiveProblem& problem, const Scenario1Config& cfg,
                                const MipOptions& options) {
  const Scenario1Model model = build_scenario1(problem, cfg);
  const Index links = problem.net.num_links();

  auto infeasible = [&](const std::string& why) {
    std::vector<std::string> names;
    for (Index e : model.violated_entries) names.push_back(capacity_entry_name(e, links));
    std::ostringstream msg;
    msg << "scenario1: " << why;
    if (!names.empty()) {
      msg << "; capacity rows over their limit under every assignment:";
      for (const auto& n : names) msg << ' ' << n;
    } else {
      msg << "; no single capacity row is infeasible on its own (budget and capacity rows conflict jointly)";
    }
    msg << "; retry with a larger alpha";
    throw InfeasibleError(msg.str(), names);
  };
  if (!model.violated_entries.empty()) infeasible("model is infeasible");

  Scenario1Result out;
  out.mip = solve_binary_mip(model.lp, model.binaries, options);
  if (out.mip.status == MipStatus::Infeasible) infeasible("model is infeasible");
  if (!out.mip.has_incumbent()) throw std::runtime_error("scenario1: node limit reached without an incumbent");

  out.offers.assign(static_cast<std::size_t>(problem.num_drivers()), -1);
  for (std::size_t v = 0; v < model.var_driver.size(); ++v)
    if (out.mip.x(static_cast<Index>(v)) > 0.5) out.offers[static_cast<std::size_t>(model.var_driver[v])] = model.var_column[v];
  out.S = assignment_from_offers(problem.num_columns(), out.offers);
  out.objective = out.mip.objective;
  for (Index col : out.offers) out.cost_used += problem.cost(col);
  return out;
}

}  // namespace incentives
