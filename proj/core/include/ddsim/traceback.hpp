#pragma once

#include <map>
#include <set>
#include <vector>

#include "ddsim/flow.hpp"
#include "ddsim/topology.hpp"
#include "ddsim/types.hpp"

namespace ddsim {

/// What one router (or the victim) knows when it serves a traceback request:
/// its in-neighbors for victim-bound traffic, which of those can process a
/// forwarded request, and a frozen flow-table snapshot.
struct RouterView {
  NodeId router{kInvalidNode};
  std::set<NodeId> upstreams;       // all victim-bound in-neighbors
  std::set<NodeId> forwardable;     // subset that is routers
  std::set<NodeId> destinations;    // destinations seen in the snapshot
  FlowTable table;                  // frozen window snapshot
};

struct TracebackRequest {
  NodeId victim{kInvalidNode};
  double issued_at_s{0.0};
  std::vector<NodeId> hop_path;  // routers traversed so far, no repeats
};

/// One flagged flow: who reported it, and the contribution that exceeded the
/// threshold.
struct FlowEvidence {
  NodeId reporter{kInvalidNode};
  FlowKey flow{};
  double contribution_bits{0.0};
  double threshold_bits{0.0};

  bool operator==(const FlowEvidence&) const = default;
};

struct ScanOptions {
  /// Literal pseudocode compatibility: stop scanning at the first flow at or
  /// below the threshold instead of skipping it. Results then depend on flow
  /// order; off by default.
  bool break_on_first_miss{false};

  bool operator==(const ScanOptions&) const = default;
};

/// Scan the snapshot for flows bound to `victim` whose entropy contribution
/// exceeds threshold_bits. Contributions are computed over the victim-bound
/// subtable. Throws EmptyTableError when the snapshot holds no victim-bound
/// flow.
std::vector<FlowEvidence> local_scan(const RouterView& view, NodeId victim,
                                     double threshold_bits, ScanOptions options = {});

struct PropagateResult {
  std::vector<FlowEvidence> flagged;

  struct Forward {
    NodeId to{kInvalidNode};
    TracebackRequest request;
  };
  std::vector<Forward> forwards;
};

/// Serve a traceback request at one router: run the local scan and forward
/// the request to every flagged upstream router not already on the hop path.
/// Throws CycleError when the request already visited view.router; an empty
/// snapshot yields no flags and no forwards.
PropagateResult propagate(const TracebackRequest& request, const RouterView& view,
                          double threshold_bits, ScanOptions options = {});

/// Routers identified as carrying attack flows, with the evidence that put
/// them there. Flagged upstream nodes that are hosts are kept separately as
/// identified sources; they are where ingress blocking applies.
struct AttackSet {
  std::map<NodeId, std::vector<FlowEvidence>> members;  // routers, set A
  std::map<NodeId, std::vector<FlowEvidence>> sources;  // flagged edge hosts

  bool empty() const { return members.empty() && sources.empty(); }
  std::set<NodeId> member_ids() const;
};

/// Group accumulated evidence by flagged upstream node, split into routers
/// (set A) and hosts, in deterministic node order. Requires quiesced
/// propagation: call once no forwards are pending.
AttackSet assemble(const std::vector<FlowEvidence>& evidence, const Topology& topology);

/// Synchronous whole-network traceback over frozen per-node tables: the
/// victim initiates, requests walk upstream, evidence accumulates. The
/// simulator models the same propagation with per-link control packets; this
/// driver is the direct API for offline analysis and tests.
struct TracebackRun {
  AttackSet attack_set;
  std::vector<FlowEvidence> evidence;
  int requests_served{0};
};

TracebackRun run_traceback(const Topology& topology,
                           const std::map<NodeId, FlowTable>& tables,
                           double threshold_bits, ScanOptions options = {});

/// Build the RouterView a node uses to serve requests, given a frozen table.
RouterView make_router_view(const Topology& topology, NodeId node, FlowTable snapshot);

}  // namespace ddsim
