#pragma once

#include <vector>

#include "incentives/problem.hpp"

namespace incentives {

enum class OracleObjective {
  Linear,     // expected free-flow time with α·v0 capacity rows
  Congested,  // F_tt of the expected volume
};

struct OracleConfig {
  double budget = 0.0;
  OracleObjective objective = OracleObjective::Congested;
  double alpha = 1.0;  // Linear only
  double max_assignments = 1e7;
};

struct OracleResult {
  Matrix S;
  std::vector<Index> offers;
  double objective = 0.0;
  double enumerated = 0.0;  // assignments visited
  Index feasible = 0;       // assignments meeting budget (and capacity, Linear)
};

/// Size of the full search space, Π_n |columns of driver n's OD|.
double oracle_search_size(const IncentiveProblem& problem);

/// Exhaustive search over every per-driver offer choice. Ties keep the
/// lexicographically smallest offer vector. Throws InputError when the space
/// exceeds max_assignments and InfeasibleError when nothing is feasible.
OracleResult brute_force_oracle(const IncentiveProblem& problem, const OracleConfig& config);

}  // namespace incentives
