#include "incentives/flow.hpp"

#include <algorithm>
#include <cmath>

namespace incentives {

namespace {

double snap(double x) {
  if (std::abs(x) < 1e-12) return 0.0;
  if (std::abs(x - 1.0) < 1e-12) return 1.0;
  return x;
}

}  // namespace

bool LocationMatrix::any_truncated() const {
  return std::any_of(truncated.begin(), truncated.end(), [](bool t) { return t; });
}

LocationMatrix build_location_matrix(const RoadNetwork& net, const RouteSet& routes, Index horizon,
                                     double unit_length, Index entrance_time) {
  if (!(unit_length > 0.0)) throw InputError("build_location_matrix: unit_length must be positive");
  if (horizon < 1) throw InputError("build_location_matrix: horizon must be >= 1");
  if (entrance_time < 1) throw InputError("build_location_matrix: entrance time is one-based");

  LocationMatrix out;
  out.num_links = net.num_links();
  out.horizon = horizon;
  out.unit_length = unit_length;
  out.entrance_time = entrance_time;
  out.R = Matrix::Zero(out.num_links * horizon, routes.num_routes());
  out.truncated.assign(static_cast<std::size_t>(routes.num_routes()), false);

  for (Index r = 0; r < routes.num_routes(); ++r) {
    // Work in time units so that link offsets commensurate with the unit
    // produce exact fractions.
    double offset = 0.0;
    for (LinkId id : routes.routes[static_cast<std::size_t>(r)].links) {
      // Arrival at this link is uniform on [start, start + 1) in units.
      const double start = static_cast<double>(entrance_time - 1) + offset;
      const double whole = std::floor(start);
      const double frac = snap(start - whole);
      const auto first = static_cast<Index>(whole);
      const double share[2] = {snap(1.0 - frac), frac};
      for (int s = 0; s < 2; ++s) {
        if (share[s] == 0.0) continue;
        const Index t = first + s;
        if (t < horizon)
          out.R(out.row(t, id), r) += share[s];
        else
          out.truncated[static_cast<std::size_t>(r)] = true;
      }
      offset += net.link(id).free_flow_time / unit_length;
    }
  }
  return out;
}

DemandModel build_demand_model(const RouteSet& routes, const ChoiceProbabilities& choice,
                               const std::vector<Index>& counts) {
  if (static_cast<Index>(counts.size()) != routes.num_od_pairs())
    throw InputError("build_demand_model: need one driver count per OD pair");
  DemandModel out;
  out.q = Vector::Zero(routes.num_od_pairs());
  out.D = Matrix::Zero(routes.num_od_pairs(), choice.num_columns());
  for (Index col = 0; col < choice.num_columns(); ++col)
    out.D(routes.od_of_route[static_cast<std::size_t>(choice.route_of_column(col))], col) = 1.0;
  for (Index k = 0; k < routes.num_od_pairs(); ++k) {
    const Index c = counts[static_cast<std::size_t>(k)];
    if (c < 0) throw InputError("build_demand_model: negative driver count");
    out.q(k) = static_cast<double>(c);
    for (Index n = 0; n < c; ++n) out.driver_to_od.push_back(k);
  }
  return out;
}

std::vector<Index> columns_of_od(const RouteSet& routes, const ChoiceProbabilities& choice, Index od) {
  std::vector<Index> cols;
  for (Index col = 0; col < choice.num_columns(); ++col)
    if (routes.od_of_route[static_cast<std::size_t>(choice.route_of_column(col))] == od) cols.push_back(col);
  return cols;
}

Index no_offer_column(const RouteSet& routes, const ChoiceProbabilities& choice, Index od) {
  return choice.column(routes.route_of_od.at(static_cast<std::size_t>(od)).front(), 0);
}

Matrix assignment_from_offers(Index num_columns, const std::vector<Index>& offers) {
  Matrix S = Matrix::Zero(num_columns, static_cast<Index>(offers.size()));
  for (std::size_t n = 0; n < offers.size(); ++n) {
    if (offers[n] < 0 || offers[n] >= num_columns) throw InputError("assignment_from_offers: column out of range");
    S(offers[n], static_cast<Index>(n)) = 1.0;
  }
  return S;
}

std::vector<Index> offers_from_assignment(const Matrix& S) {
  std::vector<Index> offers(static_cast<std::size_t>(S.cols()));
  for (Index n = 0; n < S.cols(); ++n) S.col(n).maxCoeff(&offers[static_cast<std::size_t>(n)]);
  return offers;
}

bool is_feasible_assignment(const Matrix& S, const DemandModel& demand, const RouteSet& routes,
                            const ChoiceProbabilities& choice, bool binary, double tol) {
  if (S.rows() != choice.num_columns() || S.cols() != demand.num_drivers()) return false;
  if ((S.array() < -tol).any() || (S.array() > 1.0 + tol).any()) return false;
  for (Index n = 0; n < S.cols(); ++n)
    if (std::abs(S.col(n).sum() - 1.0) > tol) return false;
  if (S.cols() > 0 && ((demand.D * S.rowwise().sum()) - demand.q).cwiseAbs().maxCoeff() > tol) return false;
  if (binary) {
    for (Index n = 0; n < S.cols(); ++n) {
      for (Index col = 0; col < S.rows(); ++col) {
        const double s = S(col, n);
        if (std::abs(s) > tol && std::abs(s - 1.0) > tol) return false;
        if (std::abs(s - 1.0) <= tol &&
            routes.od_of_route[static_cast<std::size_t>(choice.route_of_column(col))] !=
                demand.driver_to_od[static_cast<std::size_t>(n)])
          return false;
      }
    }
  }
  return true;
}

Matrix compose_A(const LocationMatrix& R, const ChoiceProbabilities& P) {
  if (R.R.cols() != P.P.rows()) throw InputError("compose_A: inner dimensions of R and P disagree");
  return R.R * P.P;
}

std::vector<Vector> scenario1_expected_volume(const Matrix& S, const ChoiceProbabilities& P,
                                              const LocationMatrix& R) {
  // Σ_n Σ_(r,i) s · p · β_{r,t}, accumulated driver by driver.
  std::vector<Vector> per_time(static_cast<std::size_t>(R.horizon), Vector::Zero(R.num_links));
  if (S.rows() != P.num_columns()) throw InputError("scenario1_expected_volume: S has wrong row count");
  for (Index n = 0; n < S.cols(); ++n) {
    for (Index col = 0; col < S.rows(); ++col) {
      const double s = S(col, n);
      if (s == 0.0) continue;
      for (Index r = 0; r < P.num_routes; ++r) {
        const double p = P.P(r, col);
        if (p == 0.0) continue;
        for (Index t = 0; t < R.horizon; ++t)
          per_time[static_cast<std::size_t>(t)] += s * p * R.R.col(r).segment(t * R.num_links, R.num_links);
      }
    }
  }
  return per_time;
}

double value_of_saved_time(double baseline_hours, double new_hours, double vot) {
  if (!(vot > 0.0)) throw InputError("value_of_saved_time: vot must be positive");
  return (baseline_hours - new_hours) * vot;
}

Vector congested_route_times(const RoadNetwork& net, const LocationMatrix& R, const Vector& volume) {
  if (volume.size() != R.R.rows()) throw InputError("congested_route_times: volume has wrong length");
  Vector delay(volume.size());
  for (Index k = 0; k < volume.size(); ++k) {
    const Link& l = net.link(static_cast<LinkId>(k % R.num_links));
    delay(k) = bpr_travel_time(l.free_flow_time, l.capacity, volume(k));
  }
  return R.R.transpose() * delay;
}

}  // namespace incentives
