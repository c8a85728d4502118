#pragma once

// Reference implementations used only by the tests. None of them call the
// library routine they check.

#include <optional>
#include <random>
#include <vector>

#include "incentives/lp.hpp"
#include "incentives/network.hpp"
#include "incentives/problem.hpp"
#include "incentives/scenario.hpp"

namespace oracle {

using incentives::Index;
using incentives::Matrix;
using incentives::Vector;

/// Every simple path from origin to destination as a link sequence, by DFS.
std::vector<std::vector<int>> all_simple_paths(const incentives::RoadNetwork& net, int origin, int destination);

/// Minimum over all basic points of a bounded LP (finite bounds required).
/// Returns nullopt when no vertex is feasible.
std::optional<double> lp_by_vertices(const incentives::LinearProgram& lp, double tol = 1e-7);

/// Softmax without max-shift, in long double.
std::vector<double> logit_direct(const std::vector<double>& times, Index offered, double amount, double theta_tt,
                                 double theta_inc);

/// Location matrix by midpoint quadrature over the entrance offset.
Matrix location_by_quadrature(const incentives::RoadNetwork& net, const incentives::RouteSet& routes, Index horizon,
                              double unit_length, Index entrance_time, int samples = 200000);

/// Root of the γ first-order condition by plain bisection.
double gamma_by_bisection(double a_u, double lambda4, double rho, double t0, double w);

/// Reference solve of min F_tt(A u + b) over {u ≥ 0, D u = q, cᵀu ≤ Ω} by
/// accelerated projected gradient with backtracking.
struct ReferenceSolve {
  Vector u;
  double objective = 0.0;
  int iterations = 0;
};
ReferenceSolve projected_gradient(const Matrix& A, const Vector& background, const Matrix& D, const Vector& q,
                                  const Vector& c, double budget, const Vector& t0, const Vector& w,
                                  int max_iters = 50000);

/// Euclidean projection onto {u ≥ 0, D u = q, cᵀu ≤ Ω} for a 0/1 OD
/// incidence D with one OD per column.
Vector project_feasible(const Vector& y, const Matrix& D, const Vector& q, const Vector& c, double budget);

/// min ‖S1 − u*‖₁ over per-driver offers within the driver's OD and the budget.
double rounding_by_enumeration(const incentives::IncentiveProblem& p, const Vector& u_star, double budget);

/// Linear-objective optimum over per-driver offers with budget and
/// α·v0 capacity rows; nullopt when infeasible.
std::optional<double> linear_by_enumeration(const incentives::IncentiveProblem& p, double budget, double alpha);

/// Small random instances: ≤ max_drivers drivers, ≤ 3 routes per OD,
/// menu {0, 2, 10}.
struct TinyInstance {
  incentives::Scenario scenario;
  double budget = 0.0;
  double alpha = 1.0;
};
TinyInstance random_tiny_instance(std::mt19937_64& rng, Index max_drivers = 4);

}  // namespace oracle
