#include "ddsim/topology.hpp"

#include <algorithm>
#include <deque>

#include "ddsim/errors.hpp"

namespace ddsim {

NodeId Topology::add_node(Role role, std::string name) {
  if (finalized_) {
    throw ConfigError("cannot add nodes to a finalized topology");
  }
  if (name.empty()) {
    throw ConfigError("node name must not be empty");
  }
  if (by_name_.count(name) != 0) {
    throw ConfigError("duplicate node name: " + name);
  }
  const NodeId id = static_cast<NodeId>(nodes_.size());
  by_name_.emplace(name, id);
  nodes_.push_back(NodeInfo{id, role, std::move(name)});
  return id;
}

void Topology::add_link(NodeId a, NodeId b, double delay_s, double capacity_pps,
                        int queue_limit) {
  if (finalized_) {
    throw ConfigError("cannot add links to a finalized topology");
  }
  if (a >= nodes_.size() || b >= nodes_.size()) {
    throw ConfigError("link endpoint refers to an unknown node");
  }
  if (a == b) {
    throw ConfigError("link endpoints must differ");
  }
  if (!(delay_s >= 0.0)) {
    throw ConfigError("link delay_s must be >= 0");
  }
  if (!(capacity_pps > 0.0)) {
    throw ConfigError("link capacity_pps must be > 0");
  }
  if (queue_limit < 1) {
    throw ConfigError("link queue_limit must be >= 1");
  }
  links_.push_back(LinkSpec{a, b, delay_s, capacity_pps, queue_limit});
}

void Topology::set_next_hop(NodeId node, NodeId next) {
  if (finalized_) {
    throw ConfigError("cannot set routing on a finalized topology");
  }
  next_hop_override_[node] = next;
}

void Topology::finalize() {
  if (finalized_) {
    return;
  }
  victim_ = kInvalidNode;
  for (const NodeInfo& node : nodes_) {
    if (node.role == Role::victim) {
      if (victim_ != kInvalidNode) {
        throw ConfigError("topology must have exactly one victim, found several");
      }
      victim_ = node.id;
    }
  }
  if (victim_ == kInvalidNode) {
    throw ConfigError("topology must have exactly one victim, found none");
  }

  adjacency_.assign(nodes_.size(), {});
  for (const LinkSpec& link : links_) {
    adjacency_[link.a].insert(link.b);
    adjacency_[link.b].insert(link.a);
  }

  next_hop_.assign(nodes_.size(), kInvalidNode);
  if (next_hop_override_.empty()) {
    // BFS from the victim; ordered neighbor sets make ties deterministic.
    std::deque<NodeId> frontier{victim_};
    std::vector<bool> seen(nodes_.size(), false);
    seen[victim_] = true;
    while (!frontier.empty()) {
      const NodeId at = frontier.front();
      frontier.pop_front();
      for (NodeId n : adjacency_[at]) {
        if (!seen[n]) {
          seen[n] = true;
          next_hop_[n] = at;
          frontier.push_back(n);
        }
      }
    }
  } else {
    for (const auto& [node, next] : next_hop_override_) {
      if (node >= nodes_.size() || next >= nodes_.size()) {
        throw ConfigError("routing entry refers to an unknown node");
      }
      if (adjacency_[node].count(next) == 0) {
        throw ConfigError("routing entry for " + nodes_[node].name +
                          " points to a non-neighbor");
      }
      next_hop_[node] = next;
    }
    // Every routed node must converge on the victim without revisiting.
    for (const NodeInfo& node : nodes_) {
      if (node.id == victim_ || next_hop_[node.id] == kInvalidNode) {
        continue;
      }
      std::vector<bool> visited(nodes_.size(), false);
      NodeId at = node.id;
      while (at != victim_) {
        if (visited[at]) {
          throw ConfigError("routing loop detected at node " + nodes_[at].name);
        }
        visited[at] = true;
        const NodeId next = next_hop_[at];
        if (next == kInvalidNode) {
          throw ConfigError("routing dead-ends at node " + nodes_[at].name);
        }
        at = next;
      }
    }
  }

  for (const NodeInfo& node : nodes_) {
    if ((node.role == Role::client || node.role == Role::attacker) &&
        next_hop_[node.id] == kInvalidNode) {
      throw ConfigError("node " + node.name + " has no path to the victim");
    }
  }

  upstream_.assign(nodes_.size(), {});
  for (const NodeInfo& node : nodes_) {
    const NodeId next = next_hop_[node.id];
    if (next != kInvalidNode) {
      upstream_[next].insert(node.id);
    }
  }
  finalized_ = true;
}

void Topology::require_finalized() const {
  if (!finalized_) {
    throw ConfigError("topology is not finalized");
  }
}

NodeId Topology::victim() const {
  require_finalized();
  return victim_;
}

Role Topology::role(NodeId node) const {
  if (node >= nodes_.size()) {
    throw ConfigError("unknown node id");
  }
  return nodes_[node].role;
}

const std::string& Topology::name(NodeId node) const {
  if (node >= nodes_.size()) {
    throw ConfigError("unknown node id");
  }
  return nodes_[node].name;
}

std::optional<NodeId> Topology::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) {
    return std::nullopt;
  }
  return it->second;
}

const std::set<NodeId>& Topology::neighbors(NodeId node) const {
  require_finalized();
  if (node >= nodes_.size()) {
    throw ConfigError("unknown node id");
  }
  return adjacency_[node];
}

std::optional<NodeId> Topology::next_hop_to_victim(NodeId node) const {
  require_finalized();
  if (node >= nodes_.size()) {
    throw ConfigError("unknown node id");
  }
  const NodeId next = next_hop_[node];
  if (next == kInvalidNode) {
    return std::nullopt;
  }
  return next;
}

const std::set<NodeId>& Topology::upstream_neighbors(NodeId node) const {
  require_finalized();
  if (node >= nodes_.size()) {
    throw ConfigError("unknown node id");
  }
  return upstream_[node];
}

std::vector<NodeId> Topology::path_to_victim(NodeId node) const {
  require_finalized();
  std::vector<NodeId> path;
  NodeId at = node;
  while (at != victim_) {
    const NodeId next = next_hop_[at];
    if (next == kInvalidNode) {
      throw ConfigError("node " + nodes_[at].name + " has no path to the victim");
    }
    path.push_back(next);
    at = next;
  }
  return path;
}

bool Topology::operator==(const Topology& other) const {
  return nodes_ == other.nodes_ && links_ == other.links_ &&
         next_hop_override_ == other.next_hop_override_;
}

}  // namespace ddsim
