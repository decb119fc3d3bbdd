#include "ddsim/flow.hpp"

#include <cmath>

#include "ddsim/errors.hpp"

namespace ddsim {

const char* to_string(Role role) {
  switch (role) {
    case Role::client:
      return "client";
    case Role::attacker:
      return "attacker";
    case Role::router:
      return "router";
    case Role::victim:
      return "victim";
  }
  return "?";
}

const char* to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::data:
      return "data";
    case PacketKind::routing:
      return "routing";
    case PacketKind::traceback_request:
      return "traceback_request";
  }
  return "?";
}

std::uint64_t FlowTable::count(const FlowKey& flow) const {
  auto it = counts_.find(flow);
  return it == counts_.end() ? 0 : it->second;
}

bool FlowTable::contains(const FlowKey& flow) const {
  return counts_.find(flow) != counts_.end();
}

void FlowTable::add(const FlowKey& flow, std::uint64_t n) {
  if (n == 0) {
    return;
  }
  counts_[flow] += n;
  total_ += n;
}

void FlowTable::roll(std::int64_t new_window_index) {
  window_index_ = new_window_index;
  total_ = 0;
  counts_.clear();
}

void record_packet(FlowTable& table, const PacketRecord& pkt) {
  if (pkt.flow.upstream == pkt.flow.victim) {
    throw ConfigError("packet flow has identical upstream and victim node");
  }
  if (pkt.size_bytes == 0) {
    throw ConfigError("packet size must be positive");
  }
  if (pkt.timestamp_s < 0.0) {
    throw ConfigError("packet timestamp must be non-negative");
  }
  if (pkt.kind != PacketKind::data) {
    return;  // control traffic never enters flow statistics
  }
  table.add(pkt.flow);
}

Distribution distribution(const FlowTable& table) {
  if (table.total() == 0) {
    throw EmptyTableError("cannot build a distribution from an empty window");
  }
  Distribution dist;
  dist.probabilities.reserve(table.flow_count());
  const double total = static_cast<double>(table.total());
  for (const auto& [flow, count] : table.counts()) {
    dist.probabilities.push_back(static_cast<double>(count) / total);
  }
  return dist;
}

double entropy(const Distribution& dist) {
  double h = 0.0;
  for (double p : dist.probabilities) {
    if (p > 0.0) {
      h -= p * std::log2(p);
    }
  }
  // -0.0 from a degenerate single-flow distribution
  return h == 0.0 ? 0.0 : h;
}

double flow_entropy_contribution(const FlowTable& table, const FlowKey& flow) {
  if (table.total() == 0) {
    throw EmptyTableError("cannot compute a flow contribution on an empty window");
  }
  if (!table.contains(flow)) {
    throw MissingFlowError("flow is not present in this window");
  }
  const double p = static_cast<double>(table.count(flow)) /
                   static_cast<double>(table.total());
  if (p >= 1.0) {
    return 0.0;
  }
  return -p * std::log2(p);
}

EntropySample make_entropy_sample(const FlowTable& table) {
  EntropySample sample;
  sample.window_index = table.window_index();
  sample.value_bits = entropy(distribution(table));
  sample.flow_count = table.flow_count();
  return sample;
}

}  // namespace ddsim
