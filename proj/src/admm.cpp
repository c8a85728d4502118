#include "incentives/admm.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "incentives/errors.hpp"
#include "incentives/scenario1.hpp"

namespace incentives {

void AdmmConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InputError("AdmmConfig: rho must be positive");
  if (!(lambda_reg >= 0.0) || !std::isfinite(lambda_reg)) throw InputError("AdmmConfig: lambda_reg must be >= 0");
  if (rho == lambda_reg) throw InputError("AdmmConfig: rho must differ from lambda_reg (H-update denominator vanishes)");
  if (max_iters < 1) throw InputError("AdmmConfig: max_iters must be >= 1");
  if (!(residual_tol >= 0.0)) throw InputError("AdmmConfig: residual_tol must be >= 0");
  if (!(objective_scale > 0.0) || !std::isfinite(objective_scale))
    throw InputError("AdmmConfig: objective_scale must be positive");
}

AdmmProblem::AdmmProblem(const IncentiveProblem& p, double budget_value)
    : A(p.A), D(p.demand.D), c(p.cost), q(p.demand.q), background(p.background), budget(budget_value),
      num_drivers(p.num_drivers()) {
  if (!(budget >= 0.0)) throw InputError("AdmmProblem: budget must be >= 0");
  const Index links = p.net.num_links();
  t0.resize(A.rows());
  w.resize(A.rows());
  for (Index e = 0; e < A.rows(); ++e) {
    const Link& l = p.net.link(static_cast<LinkId>(e % links));
    t0(e) = l.free_flow_time;
    w(e) = l.capacity;
  }
}

double AdmmProblem::relaxed_objective(const Vector& u) const {
  const Vector v = (A * u + background).cwiseMax(0.0);
  double total = 0.0;
  for (Index e = 0; e < v.size(); ++e) total += v(e) * bpr_travel_time(t0(e), w(e), v(e));
  return total;
}

double Residuals::max() const {
  double m = 0.0;
  for (double r : norms) m = std::max(m, r);
  return m;
}

const std::array<const char*, 7>& Residuals::names() {
  static const std::array<const char*, 7> n{"S1-u", "W'1-1", "Du-q", "Au+b-gamma", "H-S", "c'u+beta-budget", "W-S"};
  return n;
}

double gamma_subproblem(double a_u, double lambda4, double rho, double t0, double w) {
  if (!(rho > 0.0)) throw InputError("gamma_subproblem: rho must be positive");
  const double k = 0.75 * t0 / std::pow(w, 4);
  auto h1 = [&](double g) { return t0 + k * g * g * g * g - lambda4 + rho * (g - a_u); };
  auto h2 = [&](double g) { return 4.0 * k * g * g * g + rho; };

  if (h1(0.0) >= 0.0) return 0.0;
  // h1(hi) >= 0 because the quartic term is non-negative.
  double lo = 0.0;
  double hi = a_u + (lambda4 - t0) / rho;
  double g = hi;
  for (int it = 0; it < 200; ++it) {
    const double d = h1(g);
    if (std::abs(d) < 1e-10) break;
    if (d > 0.0) hi = g; else lo = g;
    double next = g - d / h2(g);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == g) break;
    g = next;
  }
  return g;
}

namespace {

void check_finite(const Eigen::Ref<const Matrix>& x, const char* block) {
  if (!x.allFinite())
    throw DivergenceError(std::string("ADMM diverged in the ") + block +
                          " update (non-finite values); try a smaller rho");
}

void check_finite(double x, const char* block) {
  if (!std::isfinite(x))
    throw DivergenceError(std::string("ADMM diverged in the ") + block +
                          " update (non-finite values); try a smaller rho");
}

}  // namespace

AdmmSolver::AdmmSolver(AdmmProblem problem, AdmmConfig config)
    : problem_(std::move(problem)), config_(config), rng_(config.seed) {
  config_.validate();
  const Index m = problem_.num_columns();
  if (problem_.D.cols() != m || problem_.c.size() != m || problem_.q.size() != problem_.D.rows() ||
      problem_.background.size() != problem_.A.rows() || problem_.t0.size() != problem_.A.rows() ||
      problem_.w.size() != problem_.A.rows())
    throw InputError("AdmmSolver: inconsistent problem dimensions");
  Matrix K = Matrix::Identity(m, m);
  K.noalias() += problem_.D.transpose() * problem_.D;
  K.noalias() += problem_.A.transpose() * problem_.A;
  K.noalias() += problem_.c * problem_.c.transpose();
  u_system_.compute(K);
  t0_scaled_ = config_.objective_scale * problem_.t0;
}

AdmmState AdmmSolver::initial_state(const Matrix& S0) const {
  const Index m = problem_.num_columns();
  const Index n = problem_.num_drivers;
  if (S0.rows() != m || S0.cols() != n) throw InputError("AdmmSolver: initial S has wrong shape");
  AdmmState s;
  s.rho = config_.rho;
  s.S = S0;
  s.u = S0.rowwise().sum();
  s.W = S0;
  s.H = S0;
  s.gamma = problem_.A * s.u + problem_.background;
  s.beta = std::max(0.0, problem_.budget - problem_.c.dot(s.u));
  s.lambda1 = Vector::Zero(m);
  s.lambda2 = Vector::Zero(n);
  s.lambda3 = Vector::Zero(problem_.D.rows());
  s.lambda4 = Vector::Zero(problem_.A.rows());
  s.Lambda5 = Matrix::Zero(m, n);
  s.Lambda7 = Matrix::Zero(m, n);
  return s;
}

// Stationarity of the augmented Lagrangian in u; the budget term carries
// ρ(Ω − β)c.
Vector AdmmSolver::update_u(const AdmmState& s) const {
  const double rho = s.rho;
  const AdmmProblem& p = problem_;
  Vector rhs = s.lambda1 + rho * s.S.rowwise().sum();
  rhs.noalias() += p.D.transpose() * (rho * p.q - s.lambda3);
  rhs.noalias() += p.A.transpose() * (rho * (s.gamma - p.background) - s.lambda4);
  rhs += (rho * (p.budget - s.beta) - s.lambda6) * p.c;
  return u_system_.solve(rhs) / rho;
}

// Column n solves ρ(11ᵀ + I)w = ρ1 + ρs_n − λ2_n·1 − Λ7_n, with
// (11ᵀ + I)⁻¹ = I − 11ᵀ/(m + 1).
Matrix AdmmSolver::update_W(const AdmmState& s) const {
  const double rho = s.rho;
  const auto m = static_cast<double>(problem_.num_columns());
  Matrix B = s.S - s.Lambda7 / rho;
  B.rowwise() += (Vector::Ones(s.S.cols()) - s.lambda2 / rho).transpose();
  const Eigen::RowVectorXd col_sums = B.colwise().sum() / (m + 1.0);
  B.rowwise() -= col_sums;
  return B;
}

Matrix AdmmSolver::update_H(const AdmmState& s) const {
  return h_update(s.S, s.Lambda5, s.rho, config_.lambda_reg);
}

// S(ρ11ᵀ + 2ρI) = M with (ρ11ᵀ + 2ρI)⁻¹ = (I − 11ᵀ/(N + 2))/(2ρ).
Matrix AdmmSolver::update_S(const AdmmState& s) const {
  const double rho = s.rho;
  const auto n = static_cast<double>(problem_.num_drivers);
  Matrix M = rho * s.H + rho * s.W + s.Lambda5 + s.Lambda7;
  M.colwise() += rho * s.u - s.lambda1;
  const Vector row_sums = M.rowwise().sum() / (n + 2.0);
  M.colwise() -= row_sums;
  return M / (2.0 * rho);
}

Vector AdmmSolver::update_gamma(const AdmmState& s) const {
  const AdmmProblem& p = problem_;
  const Vector a = p.A * s.u + p.background;
  Vector g(a.size());
  for (Index e = 0; e < a.size(); ++e) g(e) = gamma_subproblem(a(e), s.lambda4(e), s.rho, t0_scaled_(e), p.w(e));
  return g;
}

double AdmmSolver::update_beta(const AdmmState& s) const {
  return std::max(0.0, problem_.budget - problem_.c.dot(s.u) - s.lambda6 / s.rho);
}

void AdmmSolver::update_duals(AdmmState& s) const {
  const double rho = s.rho;
  const AdmmProblem& p = problem_;
  s.lambda1 += rho * (s.S.rowwise().sum() - s.u);
  s.lambda2 += rho * (s.W.colwise().sum().transpose() - Vector::Ones(s.W.cols()));
  s.lambda3 += rho * (p.D * s.u - p.q);
  s.lambda4 += rho * (p.A * s.u + p.background - s.gamma);
  s.Lambda5 += rho * (s.H - s.S);
  s.lambda6 += rho * (p.c.dot(s.u) + s.beta - p.budget);
  s.Lambda7 += rho * (s.W - s.S);
}

Residuals AdmmSolver::residuals(const AdmmState& s) const {
  const AdmmProblem& p = problem_;
  Residuals r;
  r.norms[0] = (s.S.rowwise().sum() - s.u).norm();
  r.norms[1] = (s.W.colwise().sum().transpose() - Vector::Ones(s.W.cols())).norm();
  r.norms[2] = (p.D * s.u - p.q).norm();
  r.norms[3] = (p.A * s.u + p.background - s.gamma).norm();
  r.norms[4] = (s.H - s.S).norm();
  r.norms[5] = std::abs(p.c.dot(s.u) + s.beta - p.budget);
  r.norms[6] = (s.W - s.S).norm();
  return r;
}

void AdmmSolver::iterate(AdmmState& s) {
  auto first_block = [&] {
    s.u = update_u(s);
    check_finite(s.u, "u");
    s.W = update_W(s);
    check_finite(s.W, "W");
    s.H = update_H(s);
    check_finite(s.H, "H");
  };
  auto second_block = [&] {
    s.S = update_S(s);
    check_finite(s.S, "S");
    s.gamma = update_gamma(s);
    check_finite(s.gamma, "gamma");
    s.beta = update_beta(s);
    check_finite(s.beta, "beta");
  };
  const Vector u0 = s.u, gamma0 = s.gamma;
  const Matrix S0 = s.S, W0 = s.W, H0 = s.H;
  const double beta0 = s.beta;
  if (rng_() & 1u) {
    first_block();
    second_block();
  } else {
    second_block();
    first_block();
  }
  Residuals r = residuals(s);
  r.dual = s.rho * std::sqrt((s.u - u0).squaredNorm() + (s.S - S0).squaredNorm() + (s.W - W0).squaredNorm() +
                                   (s.H - H0).squaredNorm() + (s.gamma - gamma0).squaredNorm() +
                                   (s.beta - beta0) * (s.beta - beta0));
  s.residuals.push_back(r);
  update_duals(s);
  check_finite(s.lambda4, "dual");
  check_finite(s.Lambda5, "dual");
  s.objective.push_back(problem_.relaxed_objective(s.u));
  ++s.iteration;
}

AdmmResult run_admm(const AdmmProblem& problem, const AdmmConfig& config, const Matrix& S0) {
  AdmmSolver solver(problem, config);
  AdmmResult out;
  out.state = solver.initial_state(S0);
  for (Index k = 0; k < config.max_iters; ++k) {
    solver.iterate(out.state);
    const Residuals& r = out.state.residuals.back();
    if (r.max() < config.residual_tol && r.dual < config.residual_tol) {
      out.converged = true;
      break;
    }
  }
  out.u = out.state.u;
  out.S = out.state.S;
  out.relaxed_objective = problem.relaxed_objective(out.u);
  return out;
}

RoundingResult round_assignment(const Vector& u_star, const IncentiveProblem& problem, double budget,
                                const MipOptions& options) {
  const Index m = problem.num_columns();
  if (u_star.size() != m) throw InputError("round_assignment: u* has the wrong length");
  if (!(budget >= 0.0)) throw InputError("round_assignment: budget must be >= 0");
  const DemandModel& demand = problem.demand;

  std::vector<Index> var_driver, var_column;
  for (Index n = 0; n < demand.num_drivers(); ++n)
    for (Index col : columns_of_od(problem.routes, problem.choice, demand.driver_to_od[static_cast<std::size_t>(n)])) {
      var_driver.push_back(n);
      var_column.push_back(col);
    }
  const auto ns = static_cast<Index>(var_driver.size());
  const Index nv = ns + m;  // s variables, then e_col

  LinearProgram lp(nv);
  lp.upper.head(ns).setOnes();
  lp.objective.tail(m).setOnes();

  for (Index n = 0; n < demand.num_drivers(); ++n) {
    Vector row = Vector::Zero(nv);
    for (Index v = 0; v < ns; ++v)
      if (var_driver[static_cast<std::size_t>(v)] == n) row(v) = 1.0;
    lp.add_row(row, RowSense::Equal, 1.0, "assign[" + std::to_string(n) + "]");
  }
  {
    Vector row = Vector::Zero(nv);
    for (Index v = 0; v < ns; ++v) row(v) = problem.cost(var_column[static_cast<std::size_t>(v)]);
    lp.add_row(row, RowSense::LessEqual, budget, "budget");
  }
  for (Index k = 0; k < demand.D.rows(); ++k) {
    Vector row = Vector::Zero(nv);
    for (Index v = 0; v < ns; ++v) row(v) = demand.D(k, var_column[static_cast<std::size_t>(v)]);
    lp.add_row(row, RowSense::Equal, demand.q(k), "demand[" + std::to_string(k) + "]");
  }
  // e_col >= ±(Σ_n s_{n,col} − u*_col)
  for (Index col = 0; col < m; ++col) {
    Vector plus = Vector::Zero(nv), minus = Vector::Zero(nv);
    for (Index v = 0; v < ns; ++v)
      if (var_column[static_cast<std::size_t>(v)] == col) {
        plus(v) = -1.0;
        minus(v) = 1.0;
      }
    plus(ns + col) = 1.0;
    minus(ns + col) = 1.0;
    lp.add_row(plus, RowSense::GreaterEqual, -u_star(col), "abs+[" + std::to_string(col) + "]");
    lp.add_row(minus, RowSense::GreaterEqual, u_star(col), "abs-[" + std::to_string(col) + "]");
  }
  add_symmetry_rows(lp, var_driver, var_column, demand.driver_to_od);

  std::vector<Index> binaries(static_cast<std::size_t>(ns));
  for (Index v = 0; v < ns; ++v) binaries[static_cast<std::size_t>(v)] = v;

  RoundingResult out;
  out.mip = solve_binary_mip(lp, binaries, options);
  if (!out.mip.has_incumbent())
    throw InfeasibleError("round_assignment: no feasible binary assignment (the $0 offer should always be one)");
  out.offers.assign(static_cast<std::size_t>(demand.num_drivers()), -1);
  for (Index v = 0; v < ns; ++v)
    if (out.mip.x(v) > 0.5) out.offers[static_cast<std::size_t>(var_driver[static_cast<std::size_t>(v)])] = var_column[static_cast<std::size_t>(v)];
  out.S = assignment_from_offers(m, out.offers);
  out.l1_distance = (out.S.rowwise().sum() - u_star).lpNorm<1>();
  return out;
}

void write_residual_csv(std::ostream& out, const AdmmState& state) {
  out << "iteration";
  for (const char* n : Residuals::names()) out << ',' << n;
  out << ",dual,relaxed_objective\n";
  out.precision(12);
  for (std::size_t k = 0; k < state.residuals.size(); ++k) {
    out << k + 1;
    for (double r : state.residuals[k].norms) out << ',' << r;
    out << ',' << state.residuals[k].dual;
    out << ',' << (k < state.objective.size() ? state.objective[k] : 0.0) << '\n';
  }
}

}  // namespace incentives
