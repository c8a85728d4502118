#pragma once

#include <cstdint>
#include <string>

#include "incentives/scenario.hpp"

namespace incentives {

/// A chain of hub nodes. Each consecutive hub pair is one OD pair served by
/// a direct link; a `multi_route_fraction` share of the pairs also get
/// `richness − 1` two-link detours through extra nodes.
struct SyntheticSpec {
  Index hubs = 4;                 // hub nodes; detour nodes come on top
  int richness = 2;               // routes per multi-route OD pair
  double tightness = 1.0;         // demand over direct-link capacity
  Index demand = 10;              // first-interval drivers per OD pair
  double multi_route_fraction = 1.0;
  std::vector<double> incentives{0.0, 2.0, 10.0};
  std::uint64_t seed = 0;

  void validate() const;
};

Scenario generate_synthetic(const SyntheticSpec& spec);

/// Named presets; "appendix-c" is the two-route, three-link example network.
Scenario preset_scenario(const std::string& name);

}  // namespace incentives
