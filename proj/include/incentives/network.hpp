#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "incentives/errors.hpp"
#include "incentives/types.hpp"

namespace incentives {

struct Link {
  LinkId id = 0;
  NodeId from = 0;
  NodeId to = 0;
  double free_flow_time = 0.0;  // t0, hours
  double capacity = 0.0;        // w, vehicles per time unit
  double length = 0.0;          // miles
};

/// Directed road graph. Link ids are dense 0..|E|-1 and index every per-link
/// vector. `capacity_limits` is v0, the per-link volume ceiling used by the
/// free-flow model; it defaults to the practical capacities.
class RoadNetwork {
 public:
  RoadNetwork() = default;
  RoadNetwork(std::vector<NodeId> nodes, std::vector<Link> links,
              std::optional<Vector> capacity_limits = std::nullopt);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId id) const { return links_.at(static_cast<std::size_t>(id)); }
  Index num_links() const { return static_cast<Index>(links_.size()); }
  bool has_node(NodeId id) const;

  /// ω: per-link free-flow times.
  const Vector& free_flow_times() const { return free_flow_; }
  /// w: per-link practical capacities.
  const Vector& capacities() const { return capacity_; }
  /// v0: per-link capacity limits.
  const Vector& capacity_limits() const { return limits_; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
  Vector free_flow_;
  Vector capacity_;
  Vector limits_;
};

struct OdPair {
  NodeId origin = 0;
  NodeId destination = 0;
  friend bool operator==(const OdPair&, const OdPair&) = default;
};

struct Route {
  OdPair od;
  std::vector<LinkId> links;
  Vector incidence;  // one-hot over links
  double free_flow_time = 0.0;
};

struct RouteSet {
  std::vector<OdPair> od_pairs;
  std::vector<Route> routes;
  std::vector<std::vector<Index>> route_of_od;  // OD index -> route indices
  std::vector<Index> od_of_route;               // route index -> OD index

  Index num_routes() const { return static_cast<Index>(routes.size()); }
  Index num_od_pairs() const { return static_cast<Index>(od_pairs.size()); }
};

/// Builds a Route from an ordered link sequence, checking contiguity.
Route make_route(const RoadNetwork& net, const OdPair& od, std::vector<LinkId> links);

/// Minimum free-flow-time path avoiding `mask`; ties go to the
/// lexicographically smallest link-id sequence.
std::optional<Route> shortest_path(const RoadNetwork& net, NodeId origin, NodeId destination,
                                   const std::set<LinkId>& mask = {});

/// Iterated shortest path with edge removal. The links of a found path are
/// masked before searching again, except cut links whose removal alone
/// would disconnect the pair; the mask starts empty for each OD pair.
/// Throws InfeasibleDemandError listing every OD pair without a route.
RouteSet enumerate_routes(const RoadNetwork& net, const std::vector<OdPair>& od_pairs,
                          int max_routes = 4);

/// BPR volume-delay function t0 (1 + 0.15 (v / w)^4).
template <typename Scalar>
Scalar bpr_travel_time(Scalar t0, Scalar w, Scalar v) {
  if (!(v >= Scalar(0))) throw DomainError("bpr_travel_time: volume must be non-negative");
  if (!(t0 > Scalar(0)) || !(w > Scalar(0)))
    throw DomainError("bpr_travel_time: t0 and capacity must be positive");
  const Scalar ratio = v / w;
  const Scalar r2 = ratio * ratio;
  return t0 * (Scalar(1) + Scalar(0.15) * r2 * r2);
}

}  // namespace incentives
