#include "ddsim/traceback.hpp"

#include <algorithm>
#include <deque>

#include "ddsim/errors.hpp"

namespace ddsim {

std::vector<FlowEvidence> local_scan(const RouterView& view, NodeId victim,
                                     double threshold_bits, ScanOptions options) {
  // Restrict to victim-bound flows so contributions decompose the entropy of
  // the traffic the traceback is actually about.
  FlowTable victim_bound(view.table.window_index());
  for (const auto& [flow, count] : view.table.counts()) {
    if (flow.victim == victim) {
      victim_bound.add(flow, count);
    }
  }
  if (victim_bound.empty()) {
    throw EmptyTableError("no victim-bound flows in this window snapshot");
  }

  std::vector<FlowEvidence> flagged;
  for (const auto& [flow, count] : victim_bound.counts()) {
    const double contribution = flow_entropy_contribution(victim_bound, flow);
    if (contribution > threshold_bits) {
      flagged.push_back(FlowEvidence{view.router, flow, contribution, threshold_bits});
    } else if (options.break_on_first_miss) {
      break;
    }
  }
  return flagged;
}

PropagateResult propagate(const TracebackRequest& request, const RouterView& view,
                          double threshold_bits, ScanOptions options) {
  if (std::find(request.hop_path.begin(), request.hop_path.end(), view.router) !=
      request.hop_path.end()) {
    throw CycleError("traceback request revisited router; request dropped");
  }

  PropagateResult result;
  try {
    result.flagged = local_scan(view, request.victim, threshold_bits, options);
  } catch (const EmptyTableError&) {
    return result;  // nothing observed here this window; nothing to forward
  }

  std::vector<NodeId> extended_path = request.hop_path;
  extended_path.push_back(view.router);
  for (const FlowEvidence& evidence : result.flagged) {
    const NodeId upstream = evidence.flow.upstream;
    if (view.forwardable.count(upstream) == 0) {
      continue;  // a host: the trail ends here
    }
    if (std::find(extended_path.begin(), extended_path.end(), upstream) !=
        extended_path.end()) {
      continue;
    }
    TracebackRequest forwarded{request.victim, request.issued_at_s, extended_path};
    result.forwards.push_back(PropagateResult::Forward{upstream, std::move(forwarded)});
  }
  return result;
}

std::set<NodeId> AttackSet::member_ids() const {
  std::set<NodeId> ids;
  for (const auto& [node, evidence] : members) {
    ids.insert(node);
  }
  return ids;
}

AttackSet assemble(const std::vector<FlowEvidence>& evidence, const Topology& topology) {
  AttackSet set;
  for (const FlowEvidence& item : evidence) {
    const NodeId upstream = item.flow.upstream;
    auto& bucket = topology.role(upstream) == Role::router ? set.members : set.sources;
    auto& records = bucket[upstream];
    if (std::find(records.begin(), records.end(), item) == records.end()) {
      records.push_back(item);
    }
  }
  return set;
}

RouterView make_router_view(const Topology& topology, NodeId node, FlowTable snapshot) {
  RouterView view;
  view.router = node;
  view.upstreams = topology.upstream_neighbors(node);
  for (NodeId upstream : view.upstreams) {
    if (topology.role(upstream) == Role::router) {
      view.forwardable.insert(upstream);
    }
  }
  for (const auto& [flow, count] : snapshot.counts()) {
    view.destinations.insert(flow.victim);
  }
  view.table = std::move(snapshot);
  return view;
}

TracebackRun run_traceback(const Topology& topology,
                           const std::map<NodeId, FlowTable>& tables,
                           double threshold_bits, ScanOptions options) {
  TracebackRun run;
  const NodeId victim = topology.victim();

  const auto table_of = [&](NodeId node) {
    auto it = tables.find(node);
    return it == tables.end() ? FlowTable{} : it->second;
  };

  std::deque<std::pair<NodeId, TracebackRequest>> queue;
  queue.emplace_back(victim, TracebackRequest{victim, 0.0, {}});
  std::set<NodeId> served;  // one scan per node per run

  while (!queue.empty()) {
    auto [node, request] = queue.front();
    queue.pop_front();
    if (served.count(node) != 0) {
      continue;
    }
    served.insert(node);
    ++run.requests_served;

    RouterView view = make_router_view(topology, node, table_of(node));
    PropagateResult result = propagate(request, view, threshold_bits, options);
    run.evidence.insert(run.evidence.end(), result.flagged.begin(), result.flagged.end());
    for (auto& forward : result.forwards) {
      queue.emplace_back(forward.to, std::move(forward.request));
    }
  }

  run.attack_set = assemble(run.evidence, topology);
  return run;
}

}  // namespace ddsim
