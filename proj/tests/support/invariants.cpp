#include "invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace invariants {

using namespace incentives;

namespace {

double rel(double err, double scale) { return err / std::max(1.0, scale); }

}  // namespace

double AdmmIdentityErrors::max() const {
  return std::max({dual, s_update, u_stationarity, w_stationarity, gamma_foc, h_box, beta_negative});
}

std::string AdmmIdentityErrors::describe() const {
  std::ostringstream s;
  s << "iterations=" << iterations << " dual=" << dual << " s_update=" << s_update << " u=" << u_stationarity
    << " W=" << w_stationarity << " gamma=" << gamma_foc << " H=" << h_box << " beta=" << beta_negative;
  return s.str();
}

AdmmIdentityErrors check_admm_identities(AdmmSolver& solver, AdmmState& state, int iterations) {
  AdmmIdentityErrors err;
  const AdmmProblem& p = solver.problem();
  const double lambda_reg = solver.config().lambda_reg;
  const double scale = solver.config().objective_scale;
  const Index m = p.num_columns();
  const Index n = p.num_drivers;
  const Vector ones_n = Vector::Ones(n);
  const Vector ones_m = Vector::Ones(m);

  for (int k = 0; k < iterations; ++k) {
    const AdmmState& s = state;
    const double rho = s.rho;

    // S: S(ρ11ᵀ + 2ρI) = ρu1ᵀ + Λ5 + ρH + Λ7 + ρW − λ1 1ᵀ
    {
      const Matrix S = solver.update_S(s);
      const Matrix lhs = S * (rho * ones_n * ones_n.transpose() + 2.0 * rho * Matrix::Identity(n, n));
      const Matrix rhs = rho * s.u * ones_n.transpose() + s.Lambda5 + rho * s.H + s.Lambda7 + rho * s.W -
                         s.lambda1 * ones_n.transpose();
      err.s_update = std::max(err.s_update, rel((lhs - rhs).cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()));
    }
    // u: gradient of the augmented Lagrangian
    {
      const Vector u = solver.update_u(s);
      const Vector g = -s.lambda1 - rho * (s.S.rowwise().sum() - u) + p.D.transpose() * (s.lambda3 + rho * (p.D * u - p.q)) +
                       p.A.transpose() * (s.lambda4 + rho * (p.A * u + p.background - s.gamma)) +
                       (s.lambda6 + rho * (p.c.dot(u) + s.beta - p.budget)) * p.c;
      const double mag = std::max({s.lambda1.cwiseAbs().maxCoeff(), rho * u.cwiseAbs().maxCoeff(),
                                   s.lambda4.size() ? s.lambda4.cwiseAbs().maxCoeff() : 0.0});
      err.u_stationarity = std::max(err.u_stationarity, rel(g.cwiseAbs().maxCoeff(), mag));
    }
    // W: 1λ2ᵀ + ρ1(Wᵀ1 − 1)ᵀ + Λ7 + ρ(W − S) = 0
    {
      const Matrix W = solver.update_W(s);
      const Matrix g = ones_m * s.lambda2.transpose() +
                       rho * ones_m * (W.colwise().sum().transpose() - ones_n).transpose() + s.Lambda7 + rho * (W - s.S);
      err.w_stationarity = std::max(err.w_stationarity, rel(g.cwiseAbs().maxCoeff(), s.Lambda7.cwiseAbs().maxCoeff()));
    }
    // γ: h′(γ) = t0(1 + 0.75(γ/w)^4) − λ4 + ρ(γ − a)
    {
      const Vector gamma = solver.update_gamma(s);
      const Vector a = p.A * s.u + p.background;
      for (Index e = 0; e < gamma.size(); ++e) {
        const double t0 = scale * p.t0(e), r = gamma(e) / p.w(e);
        const double h = t0 * (1.0 + 0.75 * r * r * r * r) - s.lambda4(e) + rho * (gamma(e) - a(e));
        const double v = gamma(e) > 0.0 ? std::abs(h) : std::max(0.0, -h);
        err.gamma_foc = std::max(err.gamma_foc, rel(v, std::abs(s.lambda4(e)) + rho * std::abs(a(e))));
      }
    }
    // H in [0,1] or {0,1}
    {
      const Matrix H = solver.update_H(s);
      double d = 0.0;
      for (Index i = 0; i < H.size(); ++i) {
        const double h = H.data()[i];
        d = std::max(d, rho > lambda_reg ? std::max({0.0, -h, h - 1.0}) : std::min(std::abs(h), std::abs(h - 1.0)));
      }
      err.h_box = std::max(err.h_box, d);
    }

    const AdmmState before = state;
    solver.iterate(state);
    const AdmmState& a = state;
    err.beta_negative = std::max(err.beta_negative, std::max(0.0, -a.beta));
    double d = 0.0;
    d = std::max(d, ((a.lambda1 - before.lambda1) - rho * (a.S.rowwise().sum() - a.u)).cwiseAbs().maxCoeff());
    d = std::max(d, ((a.lambda2 - before.lambda2) - rho * (a.W.colwise().sum().transpose() - ones_n)).cwiseAbs().maxCoeff());
    d = std::max(d, ((a.lambda3 - before.lambda3) - rho * (p.D * a.u - p.q)).cwiseAbs().maxCoeff());
    d = std::max(d, ((a.lambda4 - before.lambda4) - rho * (p.A * a.u + p.background - a.gamma)).cwiseAbs().maxCoeff());
    d = std::max(d, ((a.Lambda5 - before.Lambda5) - rho * (a.H - a.S)).cwiseAbs().maxCoeff());
    d = std::max(d, std::abs((a.lambda6 - before.lambda6) - rho * (p.c.dot(a.u) + a.beta - p.budget)));
    d = std::max(d, ((a.Lambda7 - before.Lambda7) - rho * (a.W - a.S)).cwiseAbs().maxCoeff());
    const double mag = std::max({a.lambda4.cwiseAbs().maxCoeff(), a.lambda1.cwiseAbs().maxCoeff(), std::abs(a.lambda6)});
    err.dual = std::max(err.dual, rel(d, mag));
    ++err.iterations;
  }
  return err;
}

double assignment_violation(const IncentiveProblem& problem, const Matrix& S, double budget) {
  double v = 0.0;
  if (S.rows() != problem.num_columns() || S.cols() != problem.num_drivers()) return 1e300;
  for (Index i = 0; i < S.size(); ++i) v = std::max(v, std::min(std::abs(S.data()[i]), std::abs(S.data()[i] - 1.0)));
  v = std::max(v, (S.colwise().sum().transpose() - Vector::Ones(S.cols())).cwiseAbs().maxCoeff());
  for (Index n = 0; n < S.cols(); ++n) {
    const Index od = problem.demand.driver_to_od[static_cast<std::size_t>(n)];
    for (Index col = 0; col < S.rows(); ++col)
      if (problem.demand.D(od, col) == 0.0) v = std::max(v, std::abs(S(col, n)));
  }
  const Vector u = S.rowwise().sum();
  v = std::max(v, (problem.demand.D * u - problem.demand.q).cwiseAbs().maxCoeff());
  v = std::max(v, std::max(0.0, problem.cost.dot(u) - budget));
  return v;
}

}  // namespace invariants
