#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "incentives/errors.hpp"
#include "incentives/scenario.hpp"

namespace incentives {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

RoadNetwork parse_network(const json& j) {
  if (!j.contains("nodes") || !j.contains("links")) throw InputError("network: 'nodes' and 'links' are required");
  std::vector<NodeId> nodes = j.at("nodes").get<std::vector<NodeId>>();
  std::vector<Link> links;
  Vector limits(static_cast<Index>(j.at("links").size()));
  bool any_limit = false;
  for (const json& l : j.at("links")) {
    Link link;
    link.id = l.at("id").get<LinkId>();
    link.from = l.at("from").get<NodeId>();
    link.to = l.at("to").get<NodeId>();
    link.free_flow_time = l.at("t0_hours").get<double>();
    link.capacity = l.at("capacity").get<double>();
    link.length = get_or(l, "length_miles", 0.0);
    const auto k = static_cast<Index>(links.size());
    if (l.contains("v0")) {
      any_limit = true;
      limits(k) = l.at("v0").get<double>();
    } else {
      limits(k) = link.capacity;
    }
    links.push_back(link);
  }
  // Limits follow link order in the file; reorder by id.
  std::vector<Index> order(links.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    const auto id = static_cast<std::size_t>(links[k].id);
    if (id >= links.size()) throw InputError("network: link ids must be dense 0..|E|-1");
    order[id] = static_cast<Index>(k);
  }
  Vector by_id(limits.size());
  for (std::size_t id = 0; id < order.size(); ++id) by_id(static_cast<Index>(id)) = limits(order[id]);
  return RoadNetwork(std::move(nodes), std::move(links), any_limit ? std::optional<Vector>(by_id) : std::nullopt);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario: invalid JSON: ") + e.what());
  }
  try {
    Scenario s;
    json net_json;
    if (j.contains("network")) {
      net_json = j.at("network");
    } else if (j.contains("network_file")) {
      const std::filesystem::path p = base_dir / j.at("network_file").get<std::string>();
      std::ifstream in(p);
      if (!in) throw InputError("scenario: cannot open network file " + p.string());
      net_json = json::parse(in);
    } else {
      net_json = j;  // bare network file
    }
    s.net = parse_network(net_json);

    const json& ods = net_json.contains("od_pairs") ? net_json.at("od_pairs") : j.at("od_pairs");
    for (const json& od : ods) {
      s.od_pairs.push_back({od.at("origin").get<NodeId>(), od.at("destination").get<NodeId>()});
      s.demand.push_back(get_or<Index>(od, "demand", 0));
      s.later_demand.push_back(get_or<std::vector<Index>>(od, "later_demand", {}));
    }
    if (j.contains("demand")) {
      const auto d = j.at("demand").get<std::vector<Index>>();
      if (d.size() != s.od_pairs.size()) throw InputError("scenario: 'demand' needs one entry per OD pair");
      s.demand = d;
    }

    s.unit_length = get_or(j, "unit_length_hours", s.unit_length);
    s.max_routes = get_or(j, "max_routes", s.max_routes);
    s.congestion_aware_estimates = get_or(j, "congestion_aware_estimates", false);
    if (j.contains("horizon")) {
      s.horizon = j.at("horizon").get<Index>();
    } else {
      // Long enough for a trip on the slowest single path through every link.
      double total = 0.0;
      for (const Link& l : s.net.links()) total += l.free_flow_time;
      s.horizon = std::max<Index>(1, static_cast<Index>(std::ceil(total / s.unit_length)) + 1);
    }
    if (j.contains("choice")) {
      const json& c = j.at("choice");
      s.coeffs.theta_tt = get_or(c, "theta_tt", s.coeffs.theta_tt);
      s.coeffs.theta_inc = get_or(c, "theta_inc", s.coeffs.theta_inc);
      if (c.contains("incentive_amounts")) s.menu = IncentiveMenu(c.at("incentive_amounts").get<std::vector<double>>());
    }
    if (j.contains("background_volume")) {
      const auto b = j.at("background_volume").get<std::vector<double>>();
      s.background = Eigen::Map<const Vector>(b.data(), static_cast<Index>(b.size()));
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.parent_path());
}

std::string scenario_to_json(const Scenario& s) {
  json net;
  net["nodes"] = s.net.nodes();
  net["links"] = json::array();
  for (const Link& l : s.net.links()) {
    json lj{{"id", l.id},          {"from", l.from},         {"to", l.to},
            {"t0_hours", l.free_flow_time}, {"capacity", l.capacity}, {"length_miles", l.length}};
    if (s.net.capacity_limits()(l.id) != l.capacity) lj["v0"] = s.net.capacity_limits()(l.id);
    net["links"].push_back(lj);
  }
  net["od_pairs"] = json::array();
  for (std::size_t k = 0; k < s.od_pairs.size(); ++k) {
    json od{{"origin", s.od_pairs[k].origin}, {"destination", s.od_pairs[k].destination}, {"demand", s.demand[k]}};
    if (k < s.later_demand.size() && !s.later_demand[k].empty()) od["later_demand"] = s.later_demand[k];
    net["od_pairs"].push_back(od);
  }
  json j;
  j["network"] = net;
  j["horizon"] = s.horizon;
  j["unit_length_hours"] = s.unit_length;
  j["max_routes"] = s.max_routes;
  j["congestion_aware_estimates"] = s.congestion_aware_estimates;
  j["choice"] = {{"theta_tt", s.coeffs.theta_tt}, {"theta_inc", s.coeffs.theta_inc},
                 {"incentive_amounts", s.menu.amounts()}};
  if (s.background.size() > 0) j["background_volume"] = std::vector<double>(s.background.data(), s.background.data() + s.background.size());
  return j.dump(2) + "\n";
}

}  // namespace incentives
