#include <algorithm>
#include <cmath>
#include <queue>

#include "incentives/errors.hpp"
#include "incentives/lp.hpp"

namespace incentives {

namespace {

struct Node {
  double bound = 0.0;
  Index id = 0;
  Vector lower;
  Vector upper;
  Vector x;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Most fractional binary variable, ties to the lowest index; -1 if integral.
Index pick_branch(const Vector& x, const std::vector<Index>& binaries, double tol) {
  Index best = -1;
  double best_score = tol;
  for (Index j : binaries) {
    const double f = x(j) - std::floor(x(j));
    const double score = std::min(f, 1.0 - f);
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

}  // namespace

MipResult solve_binary_mip(const LinearProgram& lp, const std::vector<Index>& binary_vars,
                           const MipOptions& options) {
  lp.validate();
  if (options.rel_gap < 0.0) throw InputError("solve_binary_mip: rel_gap must be >= 0");
  std::vector<Index> binaries = binary_vars;
  std::sort(binaries.begin(), binaries.end());
  binaries.erase(std::unique(binaries.begin(), binaries.end()), binaries.end());
  for (Index j : binaries) {
    if (j < 0 || j >= lp.num_vars()) throw InputError("solve_binary_mip: binary index out of range");
    if (lp.lower(j) < 0.0 || lp.upper(j) > 1.0)
      throw InputError("solve_binary_mip: binary variables must be bounded in [0, 1]");
  }

  MipResult result;
  LinearProgram work = lp;
  Index next_id = 0;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;

  auto gap_of = [&](double lower) {
    if (!result.has_incumbent()) return std::numeric_limits<double>::infinity();
    return std::max(0.0, result.objective - lower) / std::max(std::abs(result.objective), options.gap_epsilon);
  };
  auto abs_tol = [&] { return 1e-9 * std::max(1.0, std::abs(result.objective)); };

  // Solves the relaxation under the given bounds; integral solutions update the
  // incumbent, fractional ones are queued.
  auto evaluate = [&](Vector lower, Vector upper, double parent_bound) {
    work.lower = lower;
    work.upper = upper;
    const LpResult relax = solve_lp(work, options.lp);
    ++result.nodes;
    if (relax.status == LpStatus::Infeasible) return;
    if (relax.status != LpStatus::Optimal)
      throw std::runtime_error(std::string("solve_binary_mip: relaxation ended ") + to_string(relax.status));
    const double bound = std::max(relax.objective, parent_bound);
    if (result.has_incumbent() && bound >= result.objective - abs_tol()) return;
    const Index branch = pick_branch(relax.x, binaries, options.integrality_tol);
    if (branch < 0) {
      Vector x = relax.x;
      for (Index j : binaries) x(j) = std::round(x(j));
      const double obj = lp.objective.dot(x);
      if (!result.has_incumbent() || obj < result.objective) {
        result.x = std::move(x);
        result.objective = obj;
      }
      return;
    }
    open.push(Node{bound, next_id++, std::move(lower), std::move(upper), relax.x});
  };

  evaluate(lp.lower, lp.upper, -std::numeric_limits<double>::infinity());

  bool stopped_early = false;
  bool node_limit = false;
  while (!open.empty()) {
    const double lower = open.top().bound;
    result.bound = lower;
    result.gap = gap_of(lower);
    result.gap_trace.push_back(result.gap);
    if (result.has_incumbent() && lower >= result.objective - abs_tol()) break;
    if (result.has_incumbent() && result.gap <= options.rel_gap) {
      stopped_early = true;
      break;
    }
    if (result.nodes >= options.max_nodes) {
      node_limit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    const Index j = pick_branch(node.x, binaries, options.integrality_tol);
    Vector lo_up = node.lower, hi_up = node.upper;
    lo_up(j) = 1.0;
    hi_up(j) = 1.0;
    Vector lo_down = std::move(node.lower), hi_down = std::move(node.upper);
    lo_down(j) = 0.0;
    hi_down(j) = 0.0;
    evaluate(std::move(lo_down), std::move(hi_down), node.bound);
    evaluate(std::move(lo_up), std::move(hi_up), node.bound);
  }

  if (!result.has_incumbent()) {
    result.status = node_limit ? MipStatus::IterationLimit : MipStatus::Infeasible;
    return result;
  }
  if (open.empty() || !(stopped_early || node_limit)) {
    result.bound = open.empty() ? result.objective : std::min(result.objective, open.top().bound);
  }
  result.gap = gap_of(std::min(result.bound, result.objective));
  result.gap_trace.push_back(result.gap);
  if (node_limit)
    result.status = MipStatus::IterationLimit;
  else if (stopped_early)
    result.status = MipStatus::GapLimit;
  else
    result.status = MipStatus::Optimal;
  return result;
}

const char* to_string(MipStatus status) {
  switch (status) {
    case MipStatus::Optimal: return "optimal";
    case MipStatus::Infeasible: return "infeasible";
    case MipStatus::GapLimit: return "gap-limit";
    case MipStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

}  // namespace incentives
