#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "incentives/network.hpp"
#include "incentives/synthetic.hpp"
#include "oracles.hpp"

using namespace incentives;

namespace {

RoadNetwork two_route_network() { return preset_scenario("appendix-c").net; }

RoadNetwork parallel_links(std::vector<double> t0) {
  std::vector<Link> links;
  for (std::size_t k = 0; k < t0.size(); ++k) links.push_back({static_cast<LinkId>(k), 1, 2, t0[k], 10.0, 1.0});
  return RoadNetwork({1, 2}, links);
}

}  // namespace

TEST(RoadNetwork, RejectsBadLinks) {
  EXPECT_THROW(RoadNetwork({1, 2}, {{0, 1, 1, 0.1, 1.0, 1.0}}), InputError);   // self loop
  EXPECT_THROW(RoadNetwork({1, 2}, {{0, 1, 3, 0.1, 1.0, 1.0}}), InputError);   // unknown node
  EXPECT_THROW(RoadNetwork({1, 2}, {{1, 1, 2, 0.1, 1.0, 1.0}}), InputError);   // ids not dense
  EXPECT_THROW(RoadNetwork({1, 2}, {{0, 1, 2, 0.0, 1.0, 1.0}}), InputError);   // t0
  EXPECT_THROW(RoadNetwork({1, 2}, {{0, 1, 2, 0.1, -1.0, 1.0}}), InputError);  // capacity
  EXPECT_THROW(RoadNetwork({1, 2}, {{0, 1, 2, 0.1, 1.0, 0.0}}), InputError);   // length
}

TEST(RoadNetwork, CapacityLimitsDefaultToCapacity) {
  const RoadNetwork net = two_route_network();
  EXPECT_EQ(net.capacity_limits(), net.capacities());
}

TEST(ShortestPath, TwoRouteExample) {
  const RoadNetwork net = two_route_network();
  auto r = shortest_path(net, 1, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->links, (std::vector<LinkId>{0, 2}));
  EXPECT_NEAR(r->free_flow_time, 0.2, 1e-12);

  r = shortest_path(net, 1, 3, {0});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->links, (std::vector<LinkId>{1, 2}));
  EXPECT_NEAR(r->free_flow_time, 0.3, 1e-12);

  EXPECT_FALSE(shortest_path(net, 3, 1));
  EXPECT_THROW(shortest_path(net, 1, 9), InputError);
}

TEST(ShortestPath, TiesGoToSmallestLinkSequence) {
  const RoadNetwork net = parallel_links({0.2, 0.1, 0.1});
  auto r = shortest_path(net, 1, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->links, (std::vector<LinkId>{1}));
}

TEST(EnumerateRoutes, TwoRouteExampleGivesBothRoutes) {
  const RouteSet rs = enumerate_routes(two_route_network(), {{1, 3}}, 4);
  ASSERT_EQ(rs.num_routes(), 2);
  EXPECT_EQ(rs.routes[0].links, (std::vector<LinkId>{0, 2}));
  EXPECT_EQ(rs.routes[1].links, (std::vector<LinkId>{1, 2}));
}

TEST(EnumerateRoutes, SingleLink) {
  const RouteSet rs = enumerate_routes(parallel_links({0.1}), {{1, 2}}, 4);
  EXPECT_EQ(rs.num_routes(), 1);
}

TEST(EnumerateRoutes, ParallelLinksAscendingMatchesPathOracle) {
  const RoadNetwork net = parallel_links({0.3, 0.1, 0.2});
  const RouteSet rs = enumerate_routes(net, {{1, 2}}, 4);
  auto paths = oracle::all_simple_paths(net, 1, 2);
  std::sort(paths.begin(), paths.end(), [&](const auto& a, const auto& b) {
    return net.link(a[0]).free_flow_time < net.link(b[0]).free_flow_time;
  });
  ASSERT_EQ(rs.num_routes(), static_cast<Index>(paths.size()));
  for (std::size_t k = 0; k < paths.size(); ++k)
    EXPECT_EQ(rs.routes[k].links, std::vector<LinkId>(paths[k].begin(), paths[k].end()));
}

TEST(EnumerateRoutes, UnroutablePairsAreListed) {
  try {
    enumerate_routes(two_route_network(), {{1, 3}, {3, 1}, {2, 1}}, 4);
    FAIL() << "expected InfeasibleDemandError";
  } catch (const InfeasibleDemandError& e) {
    EXPECT_EQ(e.pairs(), (std::vector<std::pair<int, int>>{{3, 1}, {2, 1}}));
  }
}

TEST(EnumerateRoutes, MaskRestartsForEachOdPair) {
  const RouteSet rs = enumerate_routes(two_route_network(), {{1, 3}, {1, 2}}, 4);
  ASSERT_EQ(rs.route_of_od[1].size(), 2u);
  EXPECT_EQ(rs.routes[static_cast<std::size_t>(rs.route_of_od[1][0])].links, (std::vector<LinkId>{0}));
}

TEST(EnumerateRoutes, RoutesAreShortestSimplePathsAndDisjointWhereForced) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    SyntheticSpec spec;
    spec.seed = rng();
    spec.hubs = 3;
    spec.richness = 1 + static_cast<int>(rng() % 4);
    const Scenario s = generate_synthetic(spec);
    const RouteSet rs = enumerate_routes(s.net, s.od_pairs, 4);
    for (std::size_t k = 0; k < s.od_pairs.size(); ++k) {
      const auto paths = oracle::all_simple_paths(s.net, s.od_pairs[k].origin, s.od_pairs[k].destination);
      double best = 1e9;
      for (const auto& p : paths) {
        double t = 0;
        for (int l : p) t += s.net.link(l).free_flow_time;
        best = std::min(best, t);
      }
      const auto& ids = rs.route_of_od[k];
      ASSERT_FALSE(ids.empty());
      EXPECT_NEAR(rs.routes[static_cast<std::size_t>(ids[0])].free_flow_time, best, 1e-12);
      EXPECT_EQ(static_cast<int>(ids.size()), std::min<int>(spec.richness, static_cast<int>(paths.size())));
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
          for (LinkId l : rs.routes[static_cast<std::size_t>(ids[a])].links) {
            const auto& other = rs.routes[static_cast<std::size_t>(ids[b])].links;
            EXPECT_EQ(std::count(other.begin(), other.end(), l), 0);
          }
    }
  }
}

TEST(Route, FreeFlowTimeEqualsIncidenceDotOmega) {
  const RoadNetwork net = two_route_network();
  const RouteSet rs = enumerate_routes(net, {{1, 3}}, 4);
  for (const Route& r : rs.routes) {
    EXPECT_NEAR(r.free_flow_time, r.incidence.dot(net.free_flow_times()), 1e-15);
    EXPECT_EQ(r.incidence.sum(), static_cast<double>(r.links.size()));
  }
  EXPECT_THROW(make_route(net, {1, 3}, {0, 1}), InputError);
}

TEST(Bpr, Values) {
  EXPECT_DOUBLE_EQ(bpr_travel_time(0.1, 100.0, 0.0), 0.1);
  EXPECT_NEAR(bpr_travel_time(0.1, 100.0, 100.0), 0.115, 1e-15);
  EXPECT_NEAR(bpr_travel_time(0.2, 50.0, 75.0), 0.351875, 1e-15);
  EXPECT_THROW(bpr_travel_time(0.1, 1.0, -1.0), DomainError);
  EXPECT_THROW(bpr_travel_time(0.0, 1.0, 1.0), DomainError);
}

TEST(Bpr, IncreasingAndConvex) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double t0 = 0.01 + U(rng), w = 1.0 + 100.0 * U(rng), v = 3.0 * w * U(rng), h = 1e-3 * w;
    const double f0 = bpr_travel_time(t0, w, v), f1 = bpr_travel_time(t0, w, v + h), f2 = bpr_travel_time(t0, w, v + 2 * h);
    EXPECT_GT(f1, f0 - 1e-15);
    EXPECT_GE(f2 - 2 * f1 + f0, -1e-14);
  }
}
