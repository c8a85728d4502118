#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "incentives/lp.hpp"
#include "incentives/problem.hpp"
#include "incentives/types.hpp"

namespace incentives {

struct AdmmConfig {
  double rho = 1.0;         // penalty and dual step
  double lambda_reg = 0.5;  // λ̃, weight of the binary-forcing term on H
  Index max_iters = 5000;   // T̃
  double residual_tol = 1e-4;
  std::uint64_t seed = 0;   // drives the block order permutation
  /// Multiplier turning hours into the objective unit the updates work in;
  /// 60 makes ρ and λ̃ relative to vehicle-minutes.
  double objective_scale = 60.0;

  void validate() const;
};

/// Data of the relaxed congested model:
///   min Σ γ δ(γ) - λ̃/2 Σ H(H-1)
///   s.t. S1 = u, Wᵀ1 = 1, Du = q, Au + b = γ, H = S, W = S,
///        cᵀu + β = Ω, β ≥ 0, H ∈ [0,1]
/// where b is the fixed background volume.
struct AdmmProblem {
  Matrix A;
  Matrix D;
  Vector c;
  Vector q;
  Vector background;
  Vector t0;  // free-flow time per (time, link) row
  Vector w;   // practical capacity per (time, link) row
  double budget = 0.0;
  Index num_drivers = 0;

  AdmmProblem() = default;
  AdmmProblem(const IncentiveProblem& problem, double budget);

  Index num_columns() const { return A.cols(); }
  Index num_entries() const { return A.rows(); }
  /// F_tt at counts u, with negative volumes clipped to zero.
  double relaxed_objective(const Vector& u) const;
};

/// Primal residual norms, in order:
/// ‖S1−u‖, ‖Wᵀ1−1‖, ‖Du−q‖, ‖Au+b−γ‖, ‖H−S‖, |cᵀu+β−Ω|, ‖W−S‖.
struct Residuals {
  std::array<double, 7> norms{};
  /// ρ times the change of the primal iterates over the last pass.
  double dual = 0.0;
  /// Largest primal norm.
  double max() const;
  static const std::array<const char*, 7>& names();
};

struct AdmmState {
  double rho = 1.0;  // penalty used by the updates
  Vector u;
  Matrix W, H, S;
  Vector gamma;
  double beta = 0.0;

  Vector lambda1, lambda2, lambda3, lambda4;
  Matrix Lambda5, Lambda7;
  double lambda6 = 0.0;

  Index iteration = 0;
  std::vector<Residuals> residuals;
  std::vector<double> objective;  // relaxed objective after each iteration
};

/// argmin_{γ≥0} γ·t0(1 + 0.15(γ/w)^4) + λ4(a_u − γ) + ρ/2 (a_u − γ)^2.
/// The solver passes t0 already multiplied by objective_scale.
double gamma_subproblem(double a_u, double lambda4, double rho, double t0, double w);

/// Elementwise X = (ρS − Λ5 − λ̃/2)/(ρ − λ̃); clamped to [0,1] when ρ > λ̃,
/// snapped to the nearer of {0,1} (0.5 goes to 1) when ρ < λ̃.
template <typename DS, typename DL>
MatrixX<typename DS::Scalar> h_update(const Eigen::MatrixBase<DS>& S, const Eigen::MatrixBase<DL>& Lambda5,
                                      typename DS::Scalar rho, typename DS::Scalar lambda_reg) {
  using Scalar = typename DS::Scalar;
  if (rho == lambda_reg) throw InputError("h_update: rho must differ from lambda_reg");
  const MatrixX<Scalar> X =
      ((rho * S - Lambda5).array() - lambda_reg / Scalar(2)).matrix() / (rho - lambda_reg);
  if (rho > lambda_reg) return X.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
  // The concave branch projects the stationary point onto {0, 1}.
  return X.unaryExpr([](Scalar x) { return x >= Scalar(0.5) ? Scalar(1) : Scalar(0); });
}

/// One ADMM pass per call to iterate(). Factorizations of the u- and
/// W-update systems are built once in the constructor.
class AdmmSolver {
 public:
  AdmmSolver(AdmmProblem problem, AdmmConfig config);

  const AdmmProblem& problem() const { return problem_; }
  const AdmmConfig& config() const { return config_; }

  /// Primal blocks taken from S0 (u = S0·1, W = H = S0, γ = Au + b); duals zero.
  AdmmState initial_state(const Matrix& S0) const;

  /// Randomly ordered primal blocks {u, W, H} and {S, γ, β}, then the seven
  /// dual ascent steps; appends residual norms and the relaxed objective.
  /// Throws DivergenceError on non-finite iterates.
  void iterate(AdmmState& state);

  // Individual closed-form updates, reading the current state and its ρ.
  Vector update_u(const AdmmState& s) const;
  Matrix update_W(const AdmmState& s) const;
  Matrix update_H(const AdmmState& s) const;
  Matrix update_S(const AdmmState& s) const;
  Vector update_gamma(const AdmmState& s) const;
  double update_beta(const AdmmState& s) const;
  void update_duals(AdmmState& s) const;

  Residuals residuals(const AdmmState& s) const;

 private:
  AdmmProblem problem_;
  AdmmConfig config_;
  Vector t0_scaled_;
  Eigen::LDLT<Matrix> u_system_;  // I + DᵀD + AᵀA + ccᵀ
  std::mt19937_64 rng_;
};

struct AdmmResult {
  Vector u;
  Matrix S;
  AdmmState state;
  double relaxed_objective = 0.0;
  bool converged = false;
};

/// Runs until every primal residual norm and the dual residual are below
/// residual_tol, or max_iters.
AdmmResult run_admm(const AdmmProblem& problem, const AdmmConfig& config, const Matrix& S0);

struct RoundingResult {
  Matrix S;
  std::vector<Index> offers;
  MipResult mip;
  double l1_distance = 0.0;
};

/// min ‖S1 − u*‖₁ over binary assignments respecting one offer per driver,
/// the OD counts D·S·1 = q and the budget cᵀS1 ≤ Ω.
RoundingResult round_assignment(const Vector& u_star, const IncentiveProblem& problem, double budget,
                                const MipOptions& options = exact_mip_options());

/// iteration, seven residual norms, dual residual, relaxed objective.
void write_residual_csv(std::ostream& out, const AdmmState& state);

}  // namespace incentives
