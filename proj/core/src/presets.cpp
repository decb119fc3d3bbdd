#include "ddsim/presets.hpp"

#include <algorithm>
#include <numeric>

#include "ddsim/errors.hpp"

namespace ddsim {

namespace {

std::vector<int> spread(int total, int buckets) {
  std::vector<int> out(static_cast<std::size_t>(buckets), total / buckets);
  for (int i = 0; i < total % buckets; ++i) {
    out[static_cast<std::size_t>(i)] += 1;
  }
  return out;
}

struct TrafficShape {
  TrafficModel model{TrafficModel::poisson};
  double rate_pps{1.0};
  double start_s{0.0};
  double stop_s{-1.0};
  double control_multiplier{0.0};
};

void attach_sources(ScenarioConfig& cfg, SourceKind kind, const TrafficShape& shape) {
  const Role role = kind == SourceKind::attacker ? Role::attacker : Role::client;
  for (const NodeInfo& node : cfg.topology.nodes()) {
    if (node.role != role) {
      continue;
    }
    TrafficSource source;
    source.node = node.id;
    source.kind = kind;
    source.model = shape.model;
    source.rate_pps = shape.rate_pps;
    source.start_s = shape.start_s;
    source.stop_s = shape.stop_s;
    source.control_multiplier = kind == SourceKind::attacker ? shape.control_multiplier : 0.0;
    cfg.sources.push_back(source);
  }
}

double normal_load_per_router(const StarTopologySpec& spec, double legit_rate) {
  const int routers = static_cast<int>(spec.legit_per_router.size());
  const int max_legit =
      *std::max_element(spec.legit_per_router.begin(), spec.legit_per_router.end());
  (void)routers;
  return static_cast<double>(max_legit) * legit_rate;
}

/// Victim links carry twice the busiest router's normal load (60 pps floor):
/// headroom under normal traffic, saturation under flood.
double victim_capacity(const StarTopologySpec& spec, double legit_rate) {
  return std::max(60.0, 2.0 * normal_load_per_router(spec, legit_rate));
}

}  // namespace

Topology build_star_topology(const StarTopologySpec& spec) {
  if (spec.legit_per_router.size() != spec.attack_per_router.size() ||
      spec.legit_per_router.empty()) {
    throw ConfigError("star topology needs matching legit/attack host counts per router");
  }
  Topology topo;
  const NodeId victim = topo.add_node(Role::victim, "10.0.0.1");
  const int routers = static_cast<int>(spec.legit_per_router.size());
  for (int r = 0; r < routers; ++r) {
    const NodeId router = topo.add_node(Role::router, "r" + std::to_string(r + 1));
    topo.add_link(victim, router, spec.victim_link_delay_s, spec.victim_link_capacity_pps,
                  spec.queue_limit);
    for (int h = 0; h < spec.legit_per_router[static_cast<std::size_t>(r)]; ++h) {
      const NodeId host = topo.add_node(
          Role::client, "10.1." + std::to_string(r + 1) + "." + std::to_string(h + 1));
      topo.add_link(router, host, spec.host_link_delay_s, spec.host_link_capacity_pps,
                    spec.queue_limit);
    }
    for (int h = 0; h < spec.attack_per_router[static_cast<std::size_t>(r)]; ++h) {
      const NodeId host = topo.add_node(
          Role::attacker, "10.9." + std::to_string(r + 1) + "." + std::to_string(h + 1));
      topo.add_link(router, host, spec.host_link_delay_s, spec.host_link_capacity_pps,
                    spec.queue_limit);
    }
  }
  topo.finalize();
  return topo;
}

namespace {

/// Little corporate server: few clients, many attackers, all flooding through
/// one edge. Attack starts mid-run; detector parameters sized for the short
/// 35 s horizon.
ScenarioConfig make_case1() {
  ScenarioConfig cfg;
  cfg.name = "case1";
  StarTopologySpec spec;
  spec.legit_per_router = {2, 1, 1, 1};
  spec.attack_per_router = {40, 0, 0, 0};
  spec.victim_link_capacity_pps = 60.0;
  cfg.topology = build_star_topology(spec);
  attach_sources(cfg, SourceKind::legitimate, TrafficShape{TrafficModel::poisson, 3.0, 0.0, -1.0, 0.0});
  attach_sources(cfg, SourceKind::attacker, TrafficShape{TrafficModel::cbr, 10.0, 22.0, -1.0, 0.0});
  cfg.sim_time_s = 35.0;
  cfg.detector.window_s = 2.0;
  cfg.detector.min_baseline_windows = 10;
  cfg.traceback_threshold_bits = 0.12;
  cfg.defense_enabled = true;
  return cfg;
}

/// Medium server, attacker population comparable to the legitimate one and
/// spread evenly, so the flood hides in the flow mix.
ScenarioConfig make_case2() {
  ScenarioConfig cfg;
  cfg.name = "case2";
  StarTopologySpec spec;
  spec.legit_per_router = spread(50, 4);
  spec.attack_per_router = spread(50, 4);
  spec.victim_link_capacity_pps = victim_capacity(spec, 3.0);
  cfg.topology = build_star_topology(spec);
  attach_sources(cfg, SourceKind::legitimate, TrafficShape{TrafficModel::poisson, 3.0, 0.0, -1.0, 0.0});
  attach_sources(cfg, SourceKind::attacker, TrafficShape{TrafficModel::cbr, 6.0, 15.0, -1.0, 0.0});
  cfg.sim_time_s = 35.0;
  cfg.detector.window_s = 1.0;
  cfg.detector.min_baseline_windows = 10;
  return cfg;
}

/// Worldwide portal: huge legitimate population, fewer attackers pushing ten
/// times the per-source rate plus a control-packet flood.
ScenarioConfig make_case3(int divisor) {
  ScenarioConfig cfg;
  cfg.name = divisor == 1 ? "case3" : "case3_desk";
  StarTopologySpec spec;
  spec.legit_per_router = spread(10000 / divisor, 4);
  spec.attack_per_router = spread(5000 / divisor, 4);
  spec.victim_link_capacity_pps = victim_capacity(spec, 0.4);
  cfg.topology = build_star_topology(spec);
  attach_sources(cfg, SourceKind::legitimate, TrafficShape{TrafficModel::poisson, 0.4, 0.0, -1.0, 0.0});
  attach_sources(cfg, SourceKind::attacker, TrafficShape{TrafficModel::poisson, 4.0, 15.0, -1.0, 10.0});
  cfg.sim_time_s = 35.0;
  cfg.detector.window_s = 1.0;
  cfg.detector.min_baseline_windows = 10;
  cfg.record_details = divisor != 1;
  return cfg;
}

/// Large-system run: 12000 legitimate clients at 0.4 pps against 6000
/// attacking hosts at 0.5 pps.
ScenarioConfig make_simulation1(int divisor) {
  ScenarioConfig cfg;
  cfg.name = divisor == 1 ? "simulation1" : "simulation1_desk";
  StarTopologySpec spec;
  spec.legit_per_router = spread(12000 / divisor, 4);
  spec.attack_per_router = spread(6000 / divisor, 4);
  spec.victim_link_capacity_pps = victim_capacity(spec, 0.4);
  cfg.topology = build_star_topology(spec);
  attach_sources(cfg, SourceKind::legitimate, TrafficShape{TrafficModel::poisson, 0.4, 0.0, -1.0, 0.0});
  attach_sources(cfg, SourceKind::attacker, TrafficShape{TrafficModel::poisson, 0.5, 15.0, -1.0, 0.0});
  cfg.sim_time_s = 35.0;
  cfg.detector.window_s = 1.0;
  cfg.detector.min_baseline_windows = 10;
  cfg.record_details = divisor != 1;
  return cfg;
}

/// Paired summary-comparison runs on the 13-node desk topology: all-client
/// baseline versus the same population plus control-flooding attackers, with
/// enforcement off so the attack's raw impact shows in the counters.
ScenarioConfig make_table3(bool attack) {
  ScenarioConfig cfg;
  cfg.name = attack ? "table3_attack" : "table3_normal";
  StarTopologySpec spec;
  spec.legit_per_router = {2, 2, 2, 2};
  spec.attack_per_router = attack ? std::vector<int>{2, 2, 2, 2} : std::vector<int>{0, 0, 0, 0};
  spec.victim_link_capacity_pps = 60.0;
  cfg.topology = build_star_topology(spec);
  attach_sources(cfg, SourceKind::legitimate, TrafficShape{TrafficModel::poisson, 3.0, 0.0, -1.0, 0.0});
  if (attack) {
    attach_sources(cfg, SourceKind::attacker, TrafficShape{TrafficModel::cbr, 5.0, 0.0, -1.0, 20.0});
    cfg.defense_enabled = false;
  }
  cfg.sim_time_s = 35.0;
  cfg.detector.window_s = 1.0;
  cfg.detector.min_baseline_windows = 10;
  return cfg;
}

}  // namespace

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  if (name == "case1") {
    cfg = make_case1();
  } else if (name == "case2") {
    cfg = make_case2();
  } else if (name == "case3") {
    cfg = make_case3(1);
  } else if (name == "case3_desk") {
    cfg = make_case3(100);
  } else if (name == "simulation1") {
    cfg = make_simulation1(1);
  } else if (name == "simulation1_desk") {
    cfg = make_simulation1(100);
  } else if (name == "table3_normal") {
    cfg = make_table3(false);
  } else if (name == "table3_attack") {
    cfg = make_table3(true);
  } else {
    throw UnknownPresetError("unknown preset: " + name);
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"case1",       "case2",           "case3",
          "case3_desk",  "simulation1",     "simulation1_desk",
          "table3_normal", "table3_attack"};
}

}  // namespace ddsim
