#include "incentives/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "incentives/errors.hpp"

namespace incentives {

void SyntheticSpec::validate() const {
  if (hubs < 2) throw InputError("synthetic: at least 2 hubs are needed for any OD pair");
  if (richness < 1) throw InputError("synthetic: richness must be >= 1");
  if (!(tightness > 0.0)) throw InputError("synthetic: tightness must be positive");
  if (demand < 0) throw InputError("synthetic: demand must be >= 0");
  if (!(multi_route_fraction >= 0.0 && multi_route_fraction <= 1.0))
    throw InputError("synthetic: multi_route_fraction must be in [0, 1]");
  IncentiveMenu check(incentives);
  (void)check;
}

namespace {

// Uniform draw on [lo, hi) that does not depend on the standard library's
// distribution implementations.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * x;
}

double round_to(double x, double step) { return std::round(x / step) * step; }

}  // namespace

Scenario generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const Index segments = spec.hubs - 1;
  const auto multi = static_cast<Index>(std::ceil(spec.multi_route_fraction * static_cast<double>(segments) - 1e-9));

  std::vector<NodeId> nodes;
  for (Index h = 0; h < spec.hubs; ++h) nodes.push_back(static_cast<NodeId>(h + 1));
  NodeId next_node = static_cast<NodeId>(spec.hubs + 1);

  std::vector<Link> links;
  auto add_link = [&](NodeId from, NodeId to, double t0, double w) {
    Link l;
    l.id = static_cast<LinkId>(links.size());
    l.from = from;
    l.to = to;
    l.free_flow_time = t0;
    l.capacity = w;
    l.length = round_to(t0 * 50.0, 0.01);  // 50 mph
    links.push_back(l);
  };

  Scenario s;
  double longest = 0.0;
  const double base_capacity = std::max(0.5, static_cast<double>(spec.demand) / spec.tightness);
  for (Index k = 0; k < segments; ++k) {
    const auto a = static_cast<NodeId>(k + 1);
    const auto b = static_cast<NodeId>(k + 2);
    const double direct = round_to(uniform(rng, 0.05, 0.1), 0.001);
    const double w = round_to(base_capacity * uniform(rng, 0.8, 1.2), 0.01);
    add_link(a, b, direct, w);
    longest = std::max(longest, direct);
    if (k < multi) {
      for (int r = 1; r < spec.richness; ++r) {
        const NodeId mid = next_node++;
        nodes.push_back(mid);
        const double total = direct * uniform(rng, 1.1, 1.6);
        const double half = round_to(total / 2.0, 0.001);
        const double wd = round_to(w * uniform(rng, 1.5, 3.0), 0.01);
        add_link(a, mid, half, wd);
        add_link(mid, b, half, wd);
        longest = std::max(longest, 2.0 * half);
      }
    }
    s.od_pairs.push_back({a, b});
    s.demand.push_back(spec.demand);
  }

  s.net = RoadNetwork(nodes, links);
  s.later_demand.assign(s.od_pairs.size(), {});
  s.menu = IncentiveMenu(spec.incentives);
  s.unit_length = 0.1;
  s.horizon = static_cast<Index>(std::ceil(longest / s.unit_length - 1e-9)) + 1;
  s.max_routes = spec.richness;
  s.validate();
  return s;
}

Scenario preset_scenario(const std::string& name) {
  if (name != "appendix-c") throw InputError("unknown preset '" + name + "' (available: appendix-c)");
  // Two parallel links from 1 to 2, then one link 2 -> 3.
  std::vector<Link> links{{0, 1, 2, 0.1, 2.0, 5.0}, {1, 1, 2, 0.2, 2.0, 10.0}, {2, 2, 3, 0.1, 2.0, 5.0}};
  Scenario s;
  s.net = RoadNetwork({1, 2, 3}, links);
  s.od_pairs = {{1, 3}};
  s.demand = {2};
  s.later_demand = {{}};
  s.menu = IncentiveMenu({0.0, 5.0});
  s.horizon = 3;
  s.unit_length = 0.2;
  s.max_routes = 2;
  s.validate();
  return s;
}

}  // namespace incentives
