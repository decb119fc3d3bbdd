#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "ddsim/types.hpp"

namespace ddsim {

/// A monitored flow: victim-bound traffic keyed by the node it arrived from.
/// At the victim the upstream is the last-hop router; at a router it is the
/// previous-hop neighbor (router or directly attached host).
struct FlowKey {
  NodeId upstream{kInvalidNode};
  NodeId victim{kInvalidNode};

  auto operator<=>(const FlowKey&) const = default;
};

/// One packet observation, as seen by the node that recorded it.
struct PacketRecord {
  double timestamp_s{0.0};
  NodeId source{kInvalidNode};
  NodeId destination{kInvalidNode};
  std::uint32_t size_bytes{0};
  PacketKind kind{PacketKind::data};
  FlowKey flow{};
};

/// Per-window packet counts by flow. Flows that saw no packets are absent,
/// never stored with a zero count.
class FlowTable {
 public:
  FlowTable() = default;
  explicit FlowTable(std::int64_t window_index) : window_index_(window_index) {}

  std::int64_t window_index() const { return window_index_; }
  std::uint64_t total() const { return total_; }
  std::size_t flow_count() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  std::uint64_t count(const FlowKey& flow) const;
  bool contains(const FlowKey& flow) const;

  /// Flows in lexicographic (upstream, victim) order; the order every
  /// distribution and report derives from.
  const std::map<FlowKey, std::uint64_t>& counts() const { return counts_; }

  void add(const FlowKey& flow, std::uint64_t n = 1);

  /// Start a fresh window, discarding all counts.
  void roll(std::int64_t new_window_index);

 private:
  std::int64_t window_index_{0};
  std::uint64_t total_{0};
  std::map<FlowKey, std::uint64_t> counts_;
};

/// Packet distribution rate across flows, in table flow order.
/// Each entry lies in (0, 1] and the entries sum to 1.
struct Distribution {
  std::vector<double> probabilities;
};

/// Windowed entropy observation, in bits.
struct EntropySample {
  std::int64_t window_index{0};
  double value_bits{0.0};
  std::size_t flow_count{0};
};

/// Count pkt into the table. Only data packets feed flow statistics;
/// routing and traceback packets are metered separately by the simulator.
/// Throws ConfigError on a malformed record (upstream == victim, size 0,
/// negative timestamp).
void record_packet(FlowTable& table, const PacketRecord& pkt);

/// p_i = x_i / total for every stored flow. Throws EmptyTableError when the
/// table recorded nothing (the caller must skip the window).
Distribution distribution(const FlowTable& table);

/// Shannon entropy -sum(p * log2 p) in bits. A p of zero contributes zero.
double entropy(const Distribution& dist);

/// The single-flow term -p_f * log2(p_f) with p_f = x_f / total, in bits.
/// Throws MissingFlowError / EmptyTableError.
double flow_entropy_contribution(const FlowTable& table, const FlowKey& flow);

/// Convenience: distribution + entropy + window metadata in one step.
/// Throws EmptyTableError on an empty table.
EntropySample make_entropy_sample(const FlowTable& table);

}  // namespace ddsim
