#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "incentives/types.hpp"

namespace incentives {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// min cᵀx  s.t.  rows (≤ | = | ≥) rhs,  lower ≤ x ≤ upper.
/// Bounds may be ±infinity.
struct LinearProgram {
  Vector objective;
  Matrix rows;
  Vector rhs;
  std::vector<RowSense> senses;
  Vector lower;
  Vector upper;
  std::vector<std::string> row_names;  // optional, used in diagnostics

  LinearProgram() = default;
  /// n variables with bounds [0, +inf) and no rows.
  explicit LinearProgram(Index num_vars);

  Index num_vars() const { return objective.size(); }
  Index num_rows() const { return rows.rows(); }

  /// Appends a row; returns its index.
  Index add_row(const Vector& coeffs, RowSense sense, double rhs_value, std::string name = {});

  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double objective = std::numeric_limits<double>::infinity();
  Index iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  Index max_iterations = 200000;
  /// Consecutive degenerate pivots after which pricing switches from
  /// Dantzig to Bland's rule for the rest of the solve.
  Index degenerate_switch = 50;
};

/// Two-phase dense primal simplex with bounded variables.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

enum class MipStatus { Optimal, Infeasible, GapLimit, IterationLimit };

struct MipResult {
  MipStatus status = MipStatus::Infeasible;
  Vector x;
  double objective = std::numeric_limits<double>::infinity();  // incumbent
  double bound = -std::numeric_limits<double>::infinity();     // global lower bound
  double gap = std::numeric_limits<double>::infinity();
  Index nodes = 0;
  /// Relative gap after each node that changed the incumbent or the bound.
  std::vector<double> gap_trace;

  bool has_incumbent() const { return x.size() > 0; }
};

struct MipOptions {
  double rel_gap = 0.01;
  double gap_epsilon = 1e-9;  // ε in (upper - lower) / max(|upper|, ε)
  double integrality_tol = 1e-6;
  Index max_nodes = 200000;
  SimplexOptions lp;
};

/// Options that run branch and bound to proven optimality.
inline MipOptions exact_mip_options() {
  MipOptions o;
  o.rel_gap = 0.0;
  return o;
}

/// Best-first branch and bound over LP relaxations. `binary_vars` must have
/// bounds inside [0, 1]; they are branched on most-fractional first, ties to
/// the lowest index.
MipResult solve_binary_mip(const LinearProgram& lp, const std::vector<Index>& binary_vars,
                           const MipOptions& options = {});

const char* to_string(LpStatus status);
const char* to_string(MipStatus status);

/// Plain-text dump of the model: objective, one line per row, bounds.
void dump_lp(std::ostream& out, const LinearProgram& lp);

}  // namespace incentives
