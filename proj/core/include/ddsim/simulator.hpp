#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ddsim/detect.hpp"
#include "ddsim/metrics.hpp"
#include "ddsim/scenario.hpp"
#include "ddsim/traceback.hpp"

namespace ddsim {

enum class BlockReason { rate_rule, traceback };

/// One blocklist installation. Rate-rule hits are installed at the victim's
/// edge routers, keyed by packet source; traceback hits are installed at the
/// reporting router, keyed by the flagged upstream neighbor.
struct BlockEvent {
  double time_s{0.0};
  NodeId source{kInvalidNode};
  double expiry_s{0.0};
  BlockReason reason{BlockReason::rate_rule};
  NodeId installed_at{kInvalidNode};
};

enum class DropReason { queue_overflow, ingress_blocked };

struct DropRecord {
  double time_s{0.0};
  NodeId at{kInvalidNode};
  NodeId source{kInvalidNode};
  PacketKind kind{PacketKind::data};
  DropReason reason{DropReason::queue_overflow};
};

struct SendRecord {
  double time_s{0.0};
  NodeId source{kInvalidNode};
  PacketKind kind{PacketKind::data};
};

struct DeliveryRecord {
  double time_s{0.0};
  NodeId source{kInvalidNode};
  double latency_s{0.0};
};

/// A data packet arriving at the victim, in arrival order; the stream the
/// request log export and the rate rule operate on.
struct VictimRequest {
  double time_s{0.0};
  NodeId source{kInvalidNode};
};

struct RunResult {
  MetricsLedger ledger;
  std::vector<DetectionVerdict> verdicts;
  std::optional<AttackSet> attack_set;  // present iff a traceback ran
  std::vector<FlowEvidence> evidence;
  std::vector<BlockEvent> block_events;
  std::vector<VictimRequest> victim_requests;

  // Per-packet detail records, populated when config.record_details is set.
  std::vector<SendRecord> sends;
  std::vector<DeliveryRecord> deliveries;
  std::vector<DropRecord> drops;

  std::int64_t first_confirm_window{-1};
  double first_confirm_time_s{-1.0};
  double first_block_time_s{-1.0};
  std::uint64_t ingress_blocked_data{0};
  std::uint64_t ingress_blocked_total{0};
  std::uint64_t control_dropped{0};
  std::uint64_t traceback_rounds{0};
};

/// Execute one scenario to its horizon. Deterministic: identical config and
/// seed produce identical results. Throws ConfigError on an invalid config.
RunResult run(ScenarioConfig config);

}  // namespace ddsim
