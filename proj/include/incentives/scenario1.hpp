#pragma once

#include <string>
#include <vector>

#include "incentives/lp.hpp"
#include "incentives/problem.hpp"

namespace incentives {

struct Scenario1Config {
  double budget = 0.0;  // Ω, dollars
  double alpha = 1.0;   // multiplier on the capacity limits v0, optimization only

  void validate() const;
};

/// Free-flow MILP: one binary per (decision driver, offer column of its OD).
struct Scenario1Model {
  LinearProgram lp;
  std::vector<Index> binaries;
  std::vector<Index> var_driver;  // variable -> driver
  std::vector<Index> var_column;  // variable -> offer column
  std::vector<Index> capacity_rows;
  std::vector<Index> capacity_entry;  // capacity row -> (|E|·t + ℓ)
  /// (|E|·t + ℓ) entries whose limit is exceeded by load no assignment can
  /// remove.
  std::vector<Index> violated_entries;
};

/// Expected free-flow time of each offer column: Σ_r p · Σ_t β_{r,t}ᵀω.
Vector expected_free_flow_per_column(const IncentiveProblem& problem);

Scenario1Model build_scenario1(const IncentiveProblem& problem, const Scenario1Config& cfg);

struct Scenario1Result {
  Matrix S;
  std::vector<Index> offers;
  MipResult mip;
  double objective = 0.0;  // expected free-flow time of decision drivers, hours
  double cost_used = 0.0;
};

/// Throws InfeasibleError naming the capacity rows at fault when the model
/// has no feasible assignment.
Scenario1Result solve_scenario1(const IncentiveProblem& problem, const Scenario1Config& cfg,
                                const MipOptions& options = {});

/// Offer rows s_{n,·} for drivers of the same OD pair are interchangeable;
/// these rows keep their chosen column indices non-decreasing.
void add_symmetry_rows(LinearProgram& lp, const std::vector<Index>& var_driver,
                       const std::vector<Index>& var_column, const std::vector<Index>& driver_to_od);

std::string capacity_entry_name(Index entry, Index num_links);

}  // namespace incentives
