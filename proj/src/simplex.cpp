#include <algorithm>
#include <cmath>
#include <ostream>

#include "incentives/errors.hpp"
#include "incentives/lp.hpp"

namespace incentives {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Structural column in standard form: x_orig = shift + sign * y, y in [0, ub].
struct Structural {
  Index var = 0;
  double sign = 1.0;
};

class Tableau {
 public:
  Tableau(Matrix T, Vector b, Vector ub, std::vector<Index> basis, const SimplexOptions& opt)
      : T_(std::move(T)), b_(std::move(b)), ub_(std::move(ub)), basis_(std::move(basis)), opt_(opt) {
    flipped_.assign(static_cast<std::size_t>(T_.cols()), false);
    row_of_.assign(static_cast<std::size_t>(T_.cols()), -1);
    for (Index i = 0; i < rows(); ++i) row_of_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = i;
  }

  Index rows() const { return T_.rows(); }
  Index cols() const { return T_.cols(); }
  const Vector& rhs() const { return b_; }
  Index basic(Index row) const { return basis_[static_cast<std::size_t>(row)]; }
  void set_upper(Index j, double ub) { ub_(j) = ub; }

  // Minimizes costᵀy over the current feasible basis. Columns with
  // can_enter[j] == false never enter. Returns Optimal, Unbounded or
  // IterationLimit.
  LpStatus minimize(const Vector& cost, const std::vector<bool>& can_enter, Index& iterations) {
    Vector c_eff = cost;
    for (Index j = 0; j < cols(); ++j)
      if (flipped_[static_cast<std::size_t>(j)]) c_eff(j) = -cost(j);
    Vector cb(rows());
    for (Index i = 0; i < rows(); ++i) cb(i) = c_eff(basic(i));
    d_ = c_eff - (cb.transpose() * T_).transpose();

    bool bland = false;
    Index degenerate_run = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::IterationLimit;

      Index enter = -1;
      double most_negative = -opt_.optimality_tol;
      for (Index j = 0; j < cols(); ++j) {
        if (!can_enter[static_cast<std::size_t>(j)] || row_of_[static_cast<std::size_t>(j)] >= 0) continue;
        if (d_(j) < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = d_(j);
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      double step = ub_(enter);
      Index leave = -1;
      bool leave_to_upper = false;
      for (Index i = 0; i < rows(); ++i) {
        const double a = T_(i, enter);
        const Index bv = basic(i);
        double ratio;
        bool to_upper;
        if (a > opt_.pivot_tol) {
          ratio = std::max(b_(i), 0.0) / a;
          to_upper = false;
        } else if (a < -opt_.pivot_tol && std::isfinite(ub_(bv))) {
          ratio = std::max(ub_(bv) - b_(i), 0.0) / -a;
          to_upper = true;
        } else {
          continue;
        }
        const double tie = std::isfinite(step) ? 1e-12 * std::max(1.0, std::abs(step)) : 0.0;
        bool take = !std::isfinite(step) || ratio < step - tie;
        if (!take && leave >= 0 && ratio <= step + tie) {
          take = bland ? bv < basic(leave) : std::abs(a) > std::abs(T_(leave, enter));
        }
        if (take) {
          step = ratio;
          leave = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(step)) return LpStatus::Unbounded;

      ++iterations;
      if (leave < 0) {
        flip_nonbasic(enter);
      } else {
        if (leave_to_upper) flip_basic(leave);
        pivot(leave, enter);
      }
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
      if (degenerate_run > opt_.degenerate_switch) bland = true;
    }
  }

  // Value of each standard-form column at the current basis.
  Vector values() const {
    Vector y = Vector::Zero(cols());
    for (Index i = 0; i < rows(); ++i) y(basic(i)) = std::max(b_(i), 0.0);
    for (Index j = 0; j < cols(); ++j)
      if (flipped_[static_cast<std::size_t>(j)]) y(j) = ub_(j) - y(j);
    return y;
  }

 private:
  void flip_nonbasic(Index j) {
    const double u = ub_(j);
    b_ -= u * T_.col(j);
    T_.col(j) = -T_.col(j);
    d_(j) = -d_(j);
    flipped_[static_cast<std::size_t>(j)] = !flipped_[static_cast<std::size_t>(j)];
  }

  void flip_basic(Index r) {
    const Index k = basic(r);
    T_.row(r) = -T_.row(r);
    T_(r, k) = 1.0;
    b_(r) = ub_(k) - b_(r);
    flipped_[static_cast<std::size_t>(k)] = !flipped_[static_cast<std::size_t>(k)];
  }

  void pivot(Index r, Index j) {
    const double p = T_(r, j);
    T_.row(r) /= p;
    b_(r) /= p;
    Vector col = T_.col(j);
    col(r) = 0.0;
    T_.noalias() -= col * T_.row(r);
    b_.noalias() -= col * b_(r);
    d_ -= d_(j) * T_.row(r).transpose();
    T_.col(j).setZero();
    T_(r, j) = 1.0;
    d_(j) = 0.0;
    row_of_[static_cast<std::size_t>(basic(r))] = -1;
    basis_[static_cast<std::size_t>(r)] = j;
    row_of_[static_cast<std::size_t>(j)] = r;
  }

  Matrix T_;
  Vector b_;
  Vector ub_;
  Vector d_;
  std::vector<Index> basis_;
  std::vector<Index> row_of_;
  std::vector<bool> flipped_;
  SimplexOptions opt_;
};

}  // namespace

LinearProgram::LinearProgram(Index num_vars)
    : objective(Vector::Zero(num_vars)),
      rows(0, num_vars),
      rhs(0),
      lower(Vector::Zero(num_vars)),
      upper(Vector::Constant(num_vars, kInf)) {}

Index LinearProgram::add_row(const Vector& coeffs, RowSense sense, double rhs_value, std::string name) {
  if (coeffs.size() != num_vars()) throw InputError("LinearProgram::add_row: coefficient count mismatch");
  const Index r = rows.rows();
  rows.conservativeResize(r + 1, num_vars());
  rows.row(r) = coeffs.transpose();
  rhs.conservativeResize(r + 1);
  rhs(r) = rhs_value;
  senses.push_back(sense);
  row_names.push_back(std::move(name));
  return r;
}

void LinearProgram::validate() const {
  const Index n = num_vars();
  if (rows.cols() != n || lower.size() != n || upper.size() != n)
    throw InputError("LinearProgram: inconsistent variable dimensions");
  if (rhs.size() != rows.rows() || static_cast<Index>(senses.size()) != rows.rows())
    throw InputError("LinearProgram: inconsistent row dimensions");
  for (Index j = 0; j < n; ++j)
    if (!(lower(j) <= upper(j))) throw InputError("LinearProgram: lower bound exceeds upper bound");
  if (!rows.allFinite() || !rhs.allFinite() || !objective.allFinite())
    throw InputError("LinearProgram: non-finite coefficient");
}

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const Index n = lp.num_vars();
  const Index m = lp.num_rows();

  // Variable substitution into y >= 0 columns.
  std::vector<Structural> structural;
  Vector shift = Vector::Zero(n);
  std::vector<double> struct_ub;
  for (Index j = 0; j < n; ++j) {
    const double lo = lp.lower(j), hi = lp.upper(j);
    if (std::isfinite(lo)) {
      shift(j) = lo;
      structural.push_back({j, 1.0});
      struct_ub.push_back(hi - lo);
    } else if (std::isfinite(hi)) {
      shift(j) = hi;
      structural.push_back({j, -1.0});
      struct_ub.push_back(kInf);
    } else {
      structural.push_back({j, 1.0});
      struct_ub.push_back(kInf);
      structural.push_back({j, -1.0});
      struct_ub.push_back(kInf);
    }
  }
  const auto ns = static_cast<Index>(structural.size());

  Index num_slack = 0;
  for (RowSense s : lp.senses)
    if (s != RowSense::Equal) ++num_slack;

  Vector b = lp.rhs - lp.rows * shift;
  Matrix body = Matrix::Zero(m, ns + num_slack);
  for (Index k = 0; k < ns; ++k)
    body.col(k) = structural[static_cast<std::size_t>(k)].sign * lp.rows.col(structural[static_cast<std::size_t>(k)].var);
  std::vector<Index> slack_of_row(static_cast<std::size_t>(m), -1);
  {
    Index s = ns;
    for (Index i = 0; i < m; ++i) {
      const RowSense sense = lp.senses[static_cast<std::size_t>(i)];
      if (sense == RowSense::Equal) continue;
      body(i, s) = sense == RowSense::LessEqual ? 1.0 : -1.0;
      slack_of_row[static_cast<std::size_t>(i)] = s++;
    }
  }
  for (Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      b(i) = -b(i);
      body.row(i) = -body.row(i);
    }
  }

  // Initial basis: a +1 slack where available, otherwise an artificial.
  std::vector<Index> basis(static_cast<std::size_t>(m));
  std::vector<Index> needs_artificial;
  for (Index i = 0; i < m; ++i) {
    const Index s = slack_of_row[static_cast<std::size_t>(i)];
    if (s >= 0 && body(i, s) > 0.0)
      basis[static_cast<std::size_t>(i)] = s;
    else
      needs_artificial.push_back(i);
  }
  const Index first_art = ns + num_slack;
  const Index total = first_art + static_cast<Index>(needs_artificial.size());
  Matrix T = Matrix::Zero(m, total);
  T.leftCols(first_art) = body;
  for (std::size_t a = 0; a < needs_artificial.size(); ++a) {
    const Index i = needs_artificial[a];
    T(i, first_art + static_cast<Index>(a)) = 1.0;
    basis[static_cast<std::size_t>(i)] = first_art + static_cast<Index>(a);
  }
  Vector ub = Vector::Constant(total, kInf);
  for (Index k = 0; k < ns; ++k) ub(k) = struct_ub[static_cast<std::size_t>(k)];

  Tableau tab(std::move(T), b, ub, basis, options);
  LpResult result;
  std::vector<bool> can_enter(static_cast<std::size_t>(total), true);

  if (!needs_artificial.empty()) {
    Vector phase1 = Vector::Zero(total);
    phase1.tail(total - first_art).setOnes();
    const LpStatus s1 = tab.minimize(phase1, can_enter, result.iterations);
    if (s1 == LpStatus::IterationLimit) {
      result.status = s1;
      return result;
    }
    const Vector y = tab.values();
    const double infeasibility = y.tail(total - first_art).sum();
    const double scale = 1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    if (infeasibility > options.feasibility_tol * scale * 10.0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    for (Index j = first_art; j < total; ++j) {
      can_enter[static_cast<std::size_t>(j)] = false;
      tab.set_upper(j, 0.0);
    }
  }

  Vector phase2 = Vector::Zero(total);
  for (Index k = 0; k < ns; ++k)
    phase2(k) = structural[static_cast<std::size_t>(k)].sign * lp.objective(structural[static_cast<std::size_t>(k)].var);
  const LpStatus s2 = tab.minimize(phase2, can_enter, result.iterations);
  result.status = s2;
  if (s2 != LpStatus::Optimal) return result;

  const Vector y = tab.values();
  result.x = shift;
  for (Index k = 0; k < ns; ++k) {
    const Structural& s = structural[static_cast<std::size_t>(k)];
    result.x(s.var) += s.sign * y(k);
  }
  result.objective = lp.objective.dot(result.x);
  return result;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

void dump_lp(std::ostream& out, const LinearProgram& lp) {
  out << "min:";
  for (Index j = 0; j < lp.num_vars(); ++j)
    if (lp.objective(j) != 0.0) out << ' ' << lp.objective(j) << "*x" << j;
  out << '\n';
  for (Index i = 0; i < lp.num_rows(); ++i) {
    const auto& name = lp.row_names.size() > static_cast<std::size_t>(i) ? lp.row_names[static_cast<std::size_t>(i)] : std::string();
    out << 'r' << i;
    if (!name.empty()) out << '[' << name << ']';
    out << ':';
    for (Index j = 0; j < lp.num_vars(); ++j)
      if (lp.rows(i, j) != 0.0) out << ' ' << lp.rows(i, j) << "*x" << j;
    switch (lp.senses[static_cast<std::size_t>(i)]) {
      case RowSense::LessEqual: out << " <= "; break;
      case RowSense::Equal: out << " = "; break;
      case RowSense::GreaterEqual: out << " >= "; break;
    }
    out << lp.rhs(i) << '\n';
  }
  for (Index j = 0; j < lp.num_vars(); ++j)
    out << "x" << j << " in [" << lp.lower(j) << ", " << lp.upper(j) << "]\n";
}

}  // namespace incentives
