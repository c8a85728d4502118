#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "incentives/choice.hpp"
#include "incentives/network.hpp"
#include "incentives/problem.hpp"

namespace incentives {

/// A network with its demand and model settings, as read from a scenario file.
struct Scenario {
  RoadNetwork net;
  std::vector<OdPair> od_pairs;
  std::vector<Index> demand;                    // first-interval drivers per OD
  std::vector<std::vector<Index>> later_demand;  // per OD, drivers entering at units 2, 3, ...
  IncentiveMenu menu;
  ChoiceCoefficients coeffs;
  Index horizon = 3;
  double unit_length = 0.2;  // hours
  int max_routes = 4;
  bool congestion_aware_estimates = false;
  Vector background;  // optional, length |E|·horizon

  Index total_drivers() const;
  void validate() const;
};

/// Drivers are numbered OD by OD; the cohort is the first
/// ⌊penetration·N⌋ entries of one seeded permutation, returned sorted.
std::vector<Index> select_cohort(Index num_drivers, double penetration, std::uint64_t seed);

/// Routes, P, R, A, D, q and background for the eligible cohort.
IncentiveProblem build_problem(const Scenario& scenario, double penetration, std::uint64_t seed);

// JSON
Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

}  // namespace incentives
