#pragma once

#include <vector>

#include "incentives/choice.hpp"
#include "incentives/errors.hpp"
#include "incentives/network.hpp"
#include "incentives/types.hpp"

namespace incentives {

/// R: (|E|·|T|) rows by |R| columns. Row |E|·t + ℓ (t zero-based) holds the
/// probability that a driver on the column's route arrives at link ℓ during
/// time unit t. The driver enters uniformly within the entrance unit and then
/// moves at free-flow speed, so each traversed link carries total mass one
/// unless the trip runs past the horizon.
struct LocationMatrix {
  Matrix R;
  Index num_links = 0;
  Index horizon = 0;
  double unit_length = 0.0;
  Index entrance_time = 1;  // one-based
  std::vector<bool> truncated;  // per route: mass lost past the horizon

  bool any_truncated() const;
  Index row(Index time, LinkId link) const { return num_links * time + link; }
};

LocationMatrix build_location_matrix(const RoadNetwork& net, const RouteSet& routes, Index horizon,
                                     double unit_length, Index entrance_time = 1);

/// Per-OD driver counts q, the OD incidence D over offer columns, and the
/// OD of every decision driver.
struct DemandModel {
  Vector q;
  Matrix D;
  std::vector<Index> driver_to_od;

  Index num_drivers() const { return static_cast<Index>(driver_to_od.size()); }
};

/// Drivers are numbered OD by OD in the order of `counts`.
DemandModel build_demand_model(const RouteSet& routes, const ChoiceProbabilities& choice,
                               const std::vector<Index>& counts);

/// Offer columns (route of OD k, any incentive) available to OD k, ascending.
std::vector<Index> columns_of_od(const RouteSet& routes, const ChoiceProbabilities& choice, Index od);

/// Column for "$0 on the first route of OD k", the offer held by drivers
/// who receive no incentive.
Index no_offer_column(const RouteSet& routes, const ChoiceProbabilities& choice, Index od);

/// Binary S from one offer column per driver.
Matrix assignment_from_offers(Index num_columns, const std::vector<Index>& offers);

/// Offer column of every driver in a binary S (argmax per column).
std::vector<Index> offers_from_assignment(const Matrix& S);

/// Checks the assignment constraints: columns sum to one, entries in [0,1],
/// D·S·1 = q. In binary mode entries must be 0/1 and every driver's offer
/// must belong to its own OD pair.
bool is_feasible_assignment(const Matrix& S, const DemandModel& demand, const RouteSet& routes,
                            const ChoiceProbabilities& choice, bool binary, double tol = 1e-9);

/// A = R·P.
Matrix compose_A(const LocationMatrix& R, const ChoiceProbabilities& P);

template <typename DA, typename DS>
VectorX<typename DA::Scalar> expected_volume(const Eigen::MatrixBase<DA>& A,
                                             const Eigen::MatrixBase<DS>& S) {
  if (A.cols() != S.rows()) throw InputError("expected_volume: dimension mismatch");
  if (S.cols() == 0) return VectorX<typename DA::Scalar>::Zero(A.rows());
  return A * S.rowwise().sum();
}

/// Expected volume split into one |E|-vector per time unit.
std::vector<Vector> scenario1_expected_volume(const Matrix& S, const ChoiceProbabilities& P,
                                              const LocationMatrix& R);

/// F_tt(v̂) = Σ_{ℓ,t} v̂_{ℓ,t} · BPR_ℓ(v̂_{ℓ,t}), in vehicle-hours.
template <typename Derived>
typename Derived::Scalar total_travel_time(const Eigen::MatrixBase<Derived>& volume,
                                           const RoadNetwork& net) {
  using Scalar = typename Derived::Scalar;
  const Index links = net.num_links();
  if (links == 0 || volume.size() % links != 0)
    throw InputError("total_travel_time: volume length is not a multiple of |E|");
  Scalar total(0);
  for (Index k = 0; k < volume.size(); ++k) {
    const Scalar v = volume(k);
    if (!(v >= Scalar(0))) throw DomainError("total_travel_time: negative volume");
    const Link& l = net.link(static_cast<LinkId>(k % links));
    total += v * bpr_travel_time(Scalar(l.free_flow_time), Scalar(l.capacity), v);
  }
  return total;
}

/// Monetized saving (baseline - new) · vot; negative when travel time grew.
double value_of_saved_time(double baseline_hours, double new_hours, double vot = 157.8);

/// Route-time estimates under a given volume: Σ_{t,ℓ} R(t,ℓ; r) · BPR_ℓ(v̂_{ℓ,t}).
Vector congested_route_times(const RoadNetwork& net, const LocationMatrix& R, const Vector& volume);

}  // namespace incentives
