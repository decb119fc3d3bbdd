#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddsim/types.hpp"

namespace ddsim {

struct NodeInfo {
  NodeId id{kInvalidNode};
  Role role{Role::client};
  std::string name;

  bool operator==(const NodeInfo&) const = default;
};

struct LinkSpec {
  NodeId a{kInvalidNode};
  NodeId b{kInvalidNode};
  double delay_s{0.01};
  double capacity_pps{100.0};  // packets per second, per direction
  int queue_limit{50};         // packets, per direction, tail-drop

  bool operator==(const LinkSpec&) const = default;
};

/// Routed network of clients, attackers, routers and one victim. Links are
/// full duplex; routing toward the victim is a loop-free next-hop map,
/// derived by breadth-first search (lowest node id wins ties) unless set
/// explicitly.
class Topology {
 public:
  NodeId add_node(Role role, std::string name);
  void add_link(NodeId a, NodeId b, double delay_s, double capacity_pps, int queue_limit);

  /// Override the derived next-hop map for a node (must be a neighbor).
  void set_next_hop(NodeId node, NodeId next);

  /// Validate and build routing state. Throws ConfigError on a missing or
  /// duplicate victim, unknown link endpoints, non-positive delay/capacity,
  /// a routing loop, or a client/attacker with no path to the victim.
  void finalize();

  bool finalized() const { return finalized_; }
  const std::vector<NodeInfo>& nodes() const { return nodes_; }
  const std::vector<LinkSpec>& links() const { return links_; }
  std::size_t node_count() const { return nodes_.size(); }

  NodeId victim() const;
  Role role(NodeId node) const;
  const std::string& name(NodeId node) const;
  std::optional<NodeId> find(const std::string& name) const;

  const std::set<NodeId>& neighbors(NodeId node) const;

  /// Next hop on the victim-bound path; empty for the victim itself.
  std::optional<NodeId> next_hop_to_victim(NodeId node) const;

  /// In-neighbors for victim-bound traffic: nodes whose next hop is `node`.
  const std::set<NodeId>& upstream_neighbors(NodeId node) const;

  /// Victim-bound path from `node` (exclusive) to the victim (inclusive).
  std::vector<NodeId> path_to_victim(NodeId node) const;

  bool operator==(const Topology& other) const;

 private:
  void require_finalized() const;

  std::vector<NodeInfo> nodes_;
  std::vector<LinkSpec> links_;
  std::map<std::string, NodeId> by_name_;
  std::map<NodeId, NodeId> next_hop_override_;

  bool finalized_{false};
  NodeId victim_{kInvalidNode};
  std::vector<std::set<NodeId>> adjacency_;
  std::vector<NodeId> next_hop_;  // kInvalidNode for the victim / unreachable
  std::vector<std::set<NodeId>> upstream_;
};

}  // namespace ddsim
