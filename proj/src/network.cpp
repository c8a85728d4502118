#include "incentives/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace incentives {

RoadNetwork::RoadNetwork(std::vector<NodeId> nodes, std::vector<Link> links,
                         std::optional<Vector> capacity_limits)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw InputError("RoadNetwork: duplicate node id");

  const auto n = static_cast<Index>(links_.size());
  free_flow_.resize(n);
  capacity_.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Link& l = links_[static_cast<std::size_t>(i)];
    std::ostringstream where;
    where << "RoadNetwork: link " << l.id;
    if (l.id != i) throw InputError(where.str() + " breaks the dense 0-based id sequence");
    if (!has_node(l.from) || !has_node(l.to)) throw InputError(where.str() + " references an unknown node");
    if (l.from == l.to) throw InputError(where.str() + " is a self-loop");
    if (!(l.free_flow_time > 0.0) || !(l.capacity > 0.0) || !(l.length > 0.0))
      throw InputError(where.str() + " needs positive t0, capacity and length");
    free_flow_(i) = l.free_flow_time;
    capacity_(i) = l.capacity;
  }
  if (capacity_limits) {
    if (capacity_limits->size() != n) throw InputError("RoadNetwork: capacity limit vector has wrong length");
    limits_ = *capacity_limits;
  } else {
    limits_ = capacity_;
  }
}

bool RoadNetwork::has_node(NodeId id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

Route make_route(const RoadNetwork& net, const OdPair& od, std::vector<LinkId> links) {
  if (links.empty()) throw InputError("make_route: empty link sequence");
  NodeId at = od.origin;
  Route route;
  route.od = od;
  route.incidence = Vector::Zero(net.num_links());
  for (LinkId id : links) {
    if (id < 0 || id >= net.num_links()) throw InputError("make_route: unknown link id");
    const Link& l = net.link(id);
    if (l.from != at) throw InputError("make_route: links are not contiguous");
    route.incidence(id) = 1.0;
    route.free_flow_time += l.free_flow_time;
    at = l.to;
  }
  if (at != od.destination) throw InputError("make_route: path does not end at the destination");
  route.links = std::move(links);
  return route;
}

namespace {

// Label for the lexicographic Dijkstra: free-flow time plus the link sequence
// that realizes it.
struct Label {
  double time = std::numeric_limits<double>::infinity();
  std::vector<LinkId> path;
  bool reached = false;
};

bool better(double t1, const std::vector<LinkId>& p1, double t2, const std::vector<LinkId>& p2) {
  const double tol = 1e-12 * std::max({1.0, std::abs(t1), std::abs(t2)});
  if (t1 < t2 - tol) return true;
  if (t2 < t1 - tol) return false;
  return std::lexicographical_compare(p1.begin(), p1.end(), p2.begin(), p2.end());
}

}  // namespace

std::optional<Route> shortest_path(const RoadNetwork& net, NodeId origin, NodeId destination,
                                   const std::set<LinkId>& mask) {
  if (!net.has_node(origin) || !net.has_node(destination))
    throw InputError("shortest_path: unknown node id");
  if (origin == destination) throw InputError("shortest_path: origin equals destination");

  std::map<NodeId, Label> labels;
  std::set<NodeId> settled;
  labels[origin].time = 0.0;
  labels[origin].reached = true;

  while (true) {
    const Label* best = nullptr;
    NodeId best_node = 0;
    for (const auto& [node, label] : labels) {
      if (!label.reached || settled.count(node)) continue;
      if (best == nullptr || better(label.time, label.path, best->time, best->path)) {
        best = &label;
        best_node = node;
      }
    }
    if (best == nullptr) break;
    settled.insert(best_node);
    if (best_node == destination) break;

    const double base_time = best->time;
    const std::vector<LinkId> base_path = best->path;
    for (const Link& l : net.links()) {
      if (l.from != best_node || mask.count(l.id) || settled.count(l.to)) continue;
      std::vector<LinkId> path = base_path;
      path.push_back(l.id);
      const double t = base_time + l.free_flow_time;
      Label& target = labels[l.to];
      if (!target.reached || better(t, path, target.time, target.path)) {
        target.time = t;
        target.path = std::move(path);
        target.reached = true;
      }
    }
  }

  auto it = labels.find(destination);
  if (it == labels.end() || !it->second.reached) return std::nullopt;
  return make_route(net, OdPair{origin, destination}, it->second.path);
}

RouteSet enumerate_routes(const RoadNetwork& net, const std::vector<OdPair>& od_pairs,
                          int max_routes) {
  if (max_routes < 1) throw InputError("enumerate_routes: max_routes must be >= 1");
  RouteSet set;
  set.od_pairs = od_pairs;
  set.route_of_od.resize(od_pairs.size());
  std::vector<std::pair<int, int>> unroutable;

  for (std::size_t k = 0; k < od_pairs.size(); ++k) {
    const OdPair& od = od_pairs[k];
    std::set<LinkId> mask;
    for (int found = 0; found < max_routes; ++found) {
      auto route = shortest_path(net, od.origin, od.destination, mask);
      if (!route) break;
      // Links whose removal alone disconnects the pair stay usable.
      std::vector<LinkId> removable;
      for (LinkId l : route->links) {
        std::set<LinkId> trial = mask;
        trial.insert(l);
        if (shortest_path(net, od.origin, od.destination, trial)) removable.push_back(l);
      }
      mask.insert(removable.begin(), removable.end());
      set.route_of_od[k].push_back(set.num_routes());
      set.od_of_route.push_back(static_cast<Index>(k));
      set.routes.push_back(std::move(*route));
      if (removable.empty()) break;
    }
    if (set.route_of_od[k].empty()) unroutable.emplace_back(od.origin, od.destination);
  }

  if (!unroutable.empty()) {
    std::ostringstream msg;
    msg << "infeasible demand: no route for OD pair(s)";
    for (const auto& [o, d] : unroutable) msg << " (" << o << "->" << d << ")";
    throw InfeasibleDemandError(msg.str(), std::move(unroutable));
  }
  return set;
}

}  // namespace incentives
