#include "ddsim/scenario.hpp"

#include "ddsim/errors.hpp"

namespace ddsim {

void ScenarioConfig::validate() {
  if (!(sim_time_s > 0.0)) {
    throw ConfigError("sim_time_s must be > 0");
  }
  if (!(hello_interval_s > 0.0)) {
    throw ConfigError("hello_interval_s must be > 0");
  }
  if (!(traceback_threshold_bits >= 0.0)) {
    throw ConfigError("traceback_threshold_bits must be >= 0");
  }
  if (control_packet_bytes == 0) {
    throw ConfigError("control_packet_bytes must be > 0");
  }
  detector.validate();
  topology.finalize();

  for (const TrafficSource& source : sources) {
    if (source.node >= topology.node_count()) {
      throw ConfigError("traffic source refers to an unknown node");
    }
    const Role role = topology.role(source.node);
    if (role == Role::router || role == Role::victim) {
      throw ConfigError("traffic source " + topology.name(source.node) +
                        " must sit on a client or attacker node");
    }
    if (!(source.rate_pps > 0.0)) {
      throw ConfigError("traffic source rate_pps must be > 0");
    }
    if (source.packet_size_bytes == 0) {
      throw ConfigError("traffic source packet_size_bytes must be > 0");
    }
    const double stop = source.stop_s < 0.0 ? sim_time_s : source.stop_s;
    if (!(source.start_s < stop)) {
      throw ConfigError("traffic source start_s must precede stop_s");
    }
    if (source.start_s < 0.0) {
      throw ConfigError("traffic source start_s must be >= 0");
    }
    if (source.control_multiplier < 0.0) {
      throw ConfigError("traffic source control_multiplier must be >= 0");
    }
  }
}

}  // namespace ddsim
