#pragma once

#include <string>
#include <vector>

#include "ddsim/scenario.hpp"

namespace ddsim {

/// Parameters for the generated single-victim tree: the victim in the
/// middle, edge routers around it, hosts attached per router.
struct StarTopologySpec {
  std::vector<int> legit_per_router;   // also fixes the router count
  std::vector<int> attack_per_router;  // same length
  double victim_link_delay_s{0.01};
  double victim_link_capacity_pps{60.0};
  double host_link_delay_s{0.001};
  double host_link_capacity_pps{1000.0};
  int queue_limit{50};
};

/// Build the victim + edge routers + hosts tree. Node names: victim
/// "10.0.0.1", routers "r1".., clients "10.1.<router>.<n>", attackers
/// "10.9.<router>.<n>".
Topology build_star_topology(const StarTopologySpec& spec);

/// Named scenario presets; `preset-list` at the CLI prints these.
/// case3 and simulation1 also ship desk-scale variants with host counts
/// divided by 100 so tests finish in seconds.
ScenarioConfig preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace ddsim
