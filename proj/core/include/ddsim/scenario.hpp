#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddsim/detect.hpp"
#include "ddsim/topology.hpp"
#include "ddsim/traceback.hpp"
#include "ddsim/types.hpp"

namespace ddsim {

enum class TrafficModel { poisson, cbr };

enum class SourceKind { legitimate, attacker };

/// One traffic generator attached to a host node.
struct TrafficSource {
  NodeId node{kInvalidNode};
  SourceKind kind{SourceKind::legitimate};
  TrafficModel model{TrafficModel::poisson};
  double rate_pps{1.0};
  std::uint32_t packet_size_bytes{512};
  double start_s{0.0};
  double stop_s{-1.0};  // < 0 means "until the end of the run"
  /// Attack sources also emit routing-kind packets at this multiple of their
  /// data rate; 0 disables the control flood.
  double control_multiplier{0.0};

  bool operator==(const TrafficSource&) const = default;
};

struct ScenarioConfig {
  std::string name{"custom"};
  Topology topology;
  std::vector<TrafficSource> sources;
  double sim_time_s{35.0};
  std::uint64_t seed{1};
  DetectorConfig detector{};
  double traceback_threshold_bits{0.3};
  bool defense_enabled{true};
  ScanOptions scan_options{};
  double hello_interval_s{5.0};
  std::uint32_t control_packet_bytes{64};
  /// Keep per-packet send/delivery/drop records for analysis; turn off for
  /// very large runs.
  bool record_details{true};

  /// Throws ConfigError naming the violated invariant. Finalizes the
  /// topology if that has not happened yet.
  void validate();

  bool operator==(const ScenarioConfig&) const = default;
};

}  // namespace ddsim
