#include "ddsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <unordered_map>
#include <vector>

#include "ddsim/errors.hpp"
#include "ddsim/rng.hpp"

namespace ddsim {

namespace {

struct Packet {
  PacketKind kind{PacketKind::data};
  NodeId source{kInvalidNode};
  NodeId dest{kInvalidNode};
  std::uint32_t size_bytes{0};
  double sent_time_s{0.0};
  // traceback payload
  double issued_at_s{0.0};
  std::vector<NodeId> hop_path;
};

/// One direction of a full-duplex link: FIFO queue, tail drop, fixed
/// per-packet service time.
struct Channel {
  NodeId from{kInvalidNode};
  NodeId to{kInvalidNode};
  double delay_s{0.0};
  double service_s{0.0};
  int queue_limit{0};
  std::deque<Packet> queue;
  bool busy{false};
};

enum class EvKind : int {
  window_boundary = 0,  // processed before packet events at the same instant
  service_done = 1,
  arrival = 2,
  emit = 3,
  hello = 4,
};

struct Event {
  double time_s{0.0};
  int prio{0};
  std::uint64_t seq{0};
  EvKind kind{EvKind::arrival};
  int idx{0};         // channel / source / router index, by kind
  int stream{0};      // emit: 0 = data, 1 = control flood
  std::size_t pos{0}; // emit: position in the arrival list
  std::int64_t window{0};
  Packet pkt;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_s != b.time_s) return a.time_s > b.time_s;
    if (a.prio != b.prio) return a.prio > b.prio;
    return a.seq > b.seq;
  }
};

class Simulator {
 public:
  explicit Simulator(ScenarioConfig config) : cfg_(std::move(config)) {
    cfg_.validate();
  }

  RunResult run();

 private:
  void setup();
  void schedule(Event ev);
  int channel_index(NodeId from, NodeId to) const;
  void enqueue(NodeId from, NodeId to, Packet pkt, double now);
  void drop(NodeId at, const Packet& pkt, DropReason reason, double now);

  void on_service_done(const Event& ev);
  void on_arrival(const Event& ev);
  void on_emit(const Event& ev);
  void on_hello(const Event& ev);
  void on_window_boundary(const Event& ev);

  void arrive_at_victim(NodeId prev_hop, const Packet& pkt, double now);
  void arrive_at_router(NodeId router, NodeId prev_hop, const Packet& pkt, double now);
  void handle_traceback_request(NodeId router, const Packet& pkt, double now);
  void initiate_traceback(double now);
  void apply_flagged(NodeId reporter, const RouterView& view,
                     const std::vector<FlowEvidence>& flagged, double now);
  void send_traceback(NodeId from, const PropagateResult::Forward& forward, double now);
  void finish_round_if_quiesced();
  void note_block(double now);

  ScenarioConfig cfg_;
  RunResult result_;
  Detector detector_{DetectorConfig{}};
  RateTracker rate_tracker_;
  BlockList victim_blocklist_;

  NodeId victim_{kInvalidNode};
  std::vector<Channel> channels_;
  std::unordered_map<std::uint64_t, int> channel_by_pair_;
  std::vector<FlowTable> current_tables_;
  std::vector<FlowTable> completed_tables_;
  std::map<NodeId, BlockList> flow_blocks_;    // traceback: keyed by upstream neighbor
  std::map<NodeId, BlockList> source_blocks_;  // rate rule: keyed by packet source

  struct SourceStreams {
    std::vector<double> data;
    std::vector<double> control;
  };
  std::vector<SourceStreams> arrivals_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t next_seq_{0};

  bool prev_confirmed_{false};
  bool traceback_started_{false};
  int traceback_inflight_{0};
  std::set<NodeId> scanned_this_round_;
  std::int64_t in_network_data_{0};
};

constexpr double kHorizonSlack = 1e-9;

std::uint64_t pair_key(NodeId from, NodeId to) {
  return (static_cast<std::uint64_t>(from) << 32) | static_cast<std::uint64_t>(to);
}

void Simulator::schedule(Event ev) {
  ev.seq = next_seq_++;
  events_.push(std::move(ev));
}

int Simulator::channel_index(NodeId from, NodeId to) const {
  auto it = channel_by_pair_.find(pair_key(from, to));
  if (it == channel_by_pair_.end()) {
    throw ConfigError("no link between " + cfg_.topology.name(from) + " and " +
                      cfg_.topology.name(to));
  }
  return it->second;
}

void Simulator::setup() {
  victim_ = cfg_.topology.victim();
  detector_ = Detector(cfg_.detector);

  channels_.clear();
  channel_by_pair_.clear();
  for (const LinkSpec& link : cfg_.topology.links()) {
    for (const auto [from, to] : {std::pair{link.a, link.b}, std::pair{link.b, link.a}}) {
      if (!channel_by_pair_.emplace(pair_key(from, to), static_cast<int>(channels_.size()))
               .second) {
        throw ConfigError("duplicate link between " + cfg_.topology.name(from) + " and " +
                          cfg_.topology.name(to));
      }
      channels_.push_back(Channel{from, to, link.delay_s, 1.0 / link.capacity_pps,
                                  link.queue_limit, {}, false});
    }
  }

  current_tables_.assign(cfg_.topology.node_count(), FlowTable{0});
  completed_tables_.assign(cfg_.topology.node_count(), FlowTable{-1});

  // Arrival times per source are drawn up front from per-source streams, so
  // they depend only on (seed, source index), never on event interleaving.
  arrivals_.clear();
  arrivals_.resize(cfg_.sources.size());
  for (std::size_t i = 0; i < cfg_.sources.size(); ++i) {
    const TrafficSource& src = cfg_.sources[i];
    const double stop = src.stop_s < 0.0 ? cfg_.sim_time_s : std::min(src.stop_s, cfg_.sim_time_s);
    const std::uint64_t stream = static_cast<std::uint64_t>(i) * 2;
    if (src.model == TrafficModel::poisson) {
      arrivals_[i].data = poisson_arrivals(src.rate_pps, src.start_s, stop, cfg_.seed, stream);
    } else {
      arrivals_[i].data = cbr_arrivals(src.rate_pps, src.start_s, stop);
    }
    if (src.kind == SourceKind::attacker && src.control_multiplier > 0.0) {
      const double rate = src.rate_pps * src.control_multiplier;
      if (src.model == TrafficModel::poisson) {
        arrivals_[i].control = poisson_arrivals(rate, src.start_s, stop, cfg_.seed, stream + 1);
      } else {
        arrivals_[i].control = cbr_arrivals(rate, src.start_s, stop);
      }
    }
    if (!arrivals_[i].data.empty()) {
      schedule(Event{arrivals_[i].data.front(), 3, 0, EvKind::emit, static_cast<int>(i), 0, 0});
    }
    if (!arrivals_[i].control.empty()) {
      schedule(Event{arrivals_[i].control.front(), 3, 0, EvKind::emit, static_cast<int>(i), 1, 0});
    }
  }

  // Routers advertise to every neighbor each hello interval: the baseline
  // routing-packet load.
  for (const NodeInfo& node : cfg_.topology.nodes()) {
    if (node.role == Role::router && cfg_.hello_interval_s <= cfg_.sim_time_s) {
      schedule(Event{cfg_.hello_interval_s, 4, 0, EvKind::hello, static_cast<int>(node.id)});
    }
  }

  const double ws = cfg_.detector.window_s;
  if (ws <= cfg_.sim_time_s + kHorizonSlack) {
    Event boundary{ws, 0, 0, EvKind::window_boundary, 0};
    boundary.window = 0;  // the window this boundary completes
    schedule(boundary);
  }
}

void Simulator::enqueue(NodeId from, NodeId to, Packet pkt, double now) {
  Channel& ch = channels_[static_cast<std::size_t>(channel_index(from, to))];
  if (ch.queue.size() >= static_cast<std::size_t>(ch.queue_limit)) {
    drop(from, pkt, DropReason::queue_overflow, now);
    return;
  }
  if (pkt.kind != PacketKind::data) {
    ++result_.ledger.routing_packets;  // one accepted transmission
  }
  ch.queue.push_back(std::move(pkt));
  if (!ch.busy) {
    ch.busy = true;
    Event ev{now + ch.service_s, 1, 0, EvKind::service_done,
             channel_index(from, to)};
    schedule(ev);
  }
}

void Simulator::drop(NodeId at, const Packet& pkt, DropReason reason, double now) {
  if (pkt.kind == PacketKind::data) {
    ++result_.ledger.dropped_data;
    result_.ledger.dropped_bytes += pkt.size_bytes;
    --in_network_data_;
  } else {
    ++result_.control_dropped;
  }
  if (reason == DropReason::ingress_blocked) {
    ++result_.ingress_blocked_total;
    if (pkt.kind == PacketKind::data) {
      ++result_.ingress_blocked_data;
    }
  }
  if (cfg_.record_details) {
    result_.drops.push_back(DropRecord{now, at, pkt.source, pkt.kind, reason});
  }
}

void Simulator::on_service_done(const Event& ev) {
  Channel& ch = channels_[static_cast<std::size_t>(ev.idx)];
  Packet pkt = std::move(ch.queue.front());
  ch.queue.pop_front();

  Event arrival{ev.time_s + ch.delay_s, 2, 0, EvKind::arrival, ev.idx};
  arrival.pkt = std::move(pkt);
  schedule(std::move(arrival));

  if (!ch.queue.empty()) {
    schedule(Event{ev.time_s + ch.service_s, 1, 0, EvKind::service_done, ev.idx});
  } else {
    ch.busy = false;
  }
}

void Simulator::on_emit(const Event& ev) {
  const TrafficSource& src = cfg_.sources[static_cast<std::size_t>(ev.idx)];
  const auto& times =
      ev.stream == 0 ? arrivals_[static_cast<std::size_t>(ev.idx)].data
                     : arrivals_[static_cast<std::size_t>(ev.idx)].control;

  Packet pkt;
  pkt.kind = ev.stream == 0 ? PacketKind::data : PacketKind::routing;
  pkt.source = src.node;
  pkt.dest = victim_;
  pkt.size_bytes = ev.stream == 0 ? src.packet_size_bytes : cfg_.control_packet_bytes;
  pkt.sent_time_s = ev.time_s;

  if (pkt.kind == PacketKind::data) {
    ++result_.ledger.sent_data;
    ++in_network_data_;
  }
  if (cfg_.record_details) {
    result_.sends.push_back(SendRecord{ev.time_s, src.node, pkt.kind});
  }

  const auto next_hop = cfg_.topology.next_hop_to_victim(src.node);
  enqueue(src.node, *next_hop, std::move(pkt), ev.time_s);

  if (ev.pos + 1 < times.size()) {
    Event next{times[ev.pos + 1], 3, 0, EvKind::emit, ev.idx, ev.stream, ev.pos + 1};
    schedule(next);
  }
}

void Simulator::on_hello(const Event& ev) {
  const NodeId router = static_cast<NodeId>(ev.idx);
  for (NodeId neighbor : cfg_.topology.neighbors(router)) {
    Packet pkt;
    pkt.kind = PacketKind::routing;
    pkt.source = router;
    pkt.dest = neighbor;
    pkt.size_bytes = cfg_.control_packet_bytes;
    pkt.sent_time_s = ev.time_s;
    enqueue(router, neighbor, std::move(pkt), ev.time_s);
  }
  const double next = ev.time_s + cfg_.hello_interval_s;
  if (next <= cfg_.sim_time_s + kHorizonSlack) {
    schedule(Event{next, 4, 0, EvKind::hello, ev.idx});
  }
}

void Simulator::on_arrival(const Event& ev) {
  const Channel& ch = channels_[static_cast<std::size_t>(ev.idx)];
  const NodeId node = ch.to;
  const NodeId prev_hop = ch.from;
  const Packet& pkt = ev.pkt;

  if (node == victim_) {
    arrive_at_victim(prev_hop, pkt, ev.time_s);
  } else if (cfg_.topology.role(node) == Role::router) {
    arrive_at_router(node, prev_hop, pkt, ev.time_s);
  }
  // Hosts only ever receive hello packets; consumed silently.
}

void Simulator::arrive_at_victim(NodeId prev_hop, const Packet& pkt, double now) {
  if (pkt.kind != PacketKind::data) {
    return;  // control traffic terminates here; transmissions were counted per hop
  }
  ++result_.ledger.received_data;
  --in_network_data_;
  result_.ledger.latency_samples_s.push_back(now - pkt.sent_time_s);
  if (cfg_.record_details) {
    result_.deliveries.push_back(DeliveryRecord{now, pkt.source, now - pkt.sent_time_s});
  }
  result_.victim_requests.push_back(VictimRequest{now, pkt.source});

  record_packet(current_tables_[victim_],
                PacketRecord{now, pkt.source, pkt.dest, pkt.size_bytes, pkt.kind,
                             FlowKey{prev_hop, victim_}});

  // Per-source request rate rule; runs at the victim on every data arrival.
  if (rate_tracker_.rate_check(pkt.source, now, cfg_.detector)) {
    const double expiry = victim_blocklist_.block(pkt.source, now, cfg_.detector);
    result_.block_events.push_back(
        BlockEvent{now, pkt.source, expiry, BlockReason::rate_rule, victim_});
    note_block(now);
    if (cfg_.defense_enabled) {
      for (NodeId neighbor : cfg_.topology.neighbors(victim_)) {
        if (cfg_.topology.role(neighbor) == Role::router) {
          source_blocks_[neighbor].block(pkt.source, now, cfg_.detector);
        }
      }
    }
  }
}

void Simulator::arrive_at_router(NodeId router, NodeId prev_hop, const Packet& pkt,
                                 double now) {
  if (pkt.kind == PacketKind::traceback_request && pkt.dest == router) {
    handle_traceback_request(router, pkt, now);
    return;
  }

  if (cfg_.defense_enabled) {
    auto flow_it = flow_blocks_.find(router);
    if (flow_it != flow_blocks_.end() && flow_it->second.is_blocked(prev_hop, now)) {
      drop(router, pkt, DropReason::ingress_blocked, now);
      return;
    }
    auto source_it = source_blocks_.find(router);
    if (source_it != source_blocks_.end() && source_it->second.is_blocked(pkt.source, now)) {
      drop(router, pkt, DropReason::ingress_blocked, now);
      return;
    }
  }

  if (pkt.kind == PacketKind::data) {
    record_packet(current_tables_[router],
                  PacketRecord{now, pkt.source, pkt.dest, pkt.size_bytes, pkt.kind,
                               FlowKey{prev_hop, pkt.dest}});
  }

  if (pkt.dest == router) {
    return;  // hello addressed to this router
  }
  const auto next_hop = cfg_.topology.next_hop_to_victim(router);
  if (!next_hop) {
    return;
  }
  enqueue(router, *next_hop, pkt, now);
}

void Simulator::note_block(double now) {
  if (result_.first_block_time_s < 0.0) {
    result_.first_block_time_s = now;
  }
}

void Simulator::apply_flagged(NodeId reporter, const RouterView& view,
                              const std::vector<FlowEvidence>& flagged, double now) {
  result_.evidence.insert(result_.evidence.end(), flagged.begin(), flagged.end());
  if (!cfg_.defense_enabled || reporter == victim_) {
    // The victim never blocks its own last-hop routers: that would cut off
    // every flow that shares them. Blocking happens where the flagged
    // upstream is a leaf.
    return;
  }
  for (const FlowEvidence& evidence : flagged) {
    const NodeId upstream = evidence.flow.upstream;
    if (view.forwardable.count(upstream) != 0) {
      continue;  // a router: push the request further instead of blocking here
    }
    const double expiry = flow_blocks_[reporter].block(upstream, now, cfg_.detector);
    result_.block_events.push_back(
        BlockEvent{now, upstream, expiry, BlockReason::traceback, reporter});
    note_block(now);
  }
}

void Simulator::send_traceback(NodeId from, const PropagateResult::Forward& forward,
                               double now) {
  Packet pkt;
  pkt.kind = PacketKind::traceback_request;
  pkt.source = victim_;
  pkt.dest = forward.to;
  pkt.size_bytes = cfg_.control_packet_bytes;
  pkt.sent_time_s = now;
  pkt.issued_at_s = forward.request.issued_at_s;
  pkt.hop_path = forward.request.hop_path;
  ++traceback_inflight_;
  enqueue(from, forward.to, std::move(pkt), now);
}

void Simulator::handle_traceback_request(NodeId router, const Packet& pkt, double now) {
  --traceback_inflight_;
  if (scanned_this_round_.count(router) != 0) {
    finish_round_if_quiesced();
    return;
  }
  scanned_this_round_.insert(router);

  RouterView view = make_router_view(cfg_.topology, router, completed_tables_[router]);
  TracebackRequest request{victim_, pkt.issued_at_s, pkt.hop_path};
  try {
    PropagateResult scan =
        propagate(request, view, cfg_.traceback_threshold_bits, cfg_.scan_options);
    apply_flagged(router, view, scan.flagged, now);
    for (const auto& forward : scan.forwards) {
      send_traceback(router, forward, now);
    }
  } catch (const CycleError&) {
    // Guarded against by construction; a malformed request is dropped.
  }
  finish_round_if_quiesced();
}

void Simulator::initiate_traceback(double now) {
  ++result_.traceback_rounds;
  traceback_started_ = true;
  scanned_this_round_.clear();
  scanned_this_round_.insert(victim_);

  RouterView view = make_router_view(cfg_.topology, victim_, completed_tables_[victim_]);
  TracebackRequest request{victim_, now, {}};
  try {
    PropagateResult scan =
        propagate(request, view, cfg_.traceback_threshold_bits, cfg_.scan_options);
    apply_flagged(victim_, view, scan.flagged, now);
    for (const auto& forward : scan.forwards) {
      send_traceback(victim_, forward, now);
    }
  } catch (const CycleError&) {
  }
  finish_round_if_quiesced();
}

void Simulator::finish_round_if_quiesced() {
  if (traceback_started_ && traceback_inflight_ == 0) {
    result_.attack_set = assemble(result_.evidence, cfg_.topology);
  }
}

void Simulator::on_window_boundary(const Event& ev) {
  const std::int64_t completed = ev.window;
  for (std::size_t node = 0; node < current_tables_.size(); ++node) {
    completed_tables_[node] = std::move(current_tables_[node]);
    current_tables_[node] = FlowTable{completed + 1};
  }

  const FlowTable& victim_window = completed_tables_[victim_];
  if (victim_window.total() > 0) {
    const EntropySample sample = make_entropy_sample(victim_window);
    result_.ledger.entropy_trace.push_back(sample);
    if (auto verdict = detector_.observe(sample)) {
      result_.verdicts.push_back(*verdict);
      const bool newly_confirmed = verdict->attack_confirmed && !prev_confirmed_;
      prev_confirmed_ = verdict->attack_confirmed;
      if (newly_confirmed) {
        if (result_.first_confirm_window < 0) {
          result_.first_confirm_window = verdict->window_index;
          result_.first_confirm_time_s = ev.time_s;
        }
        if (cfg_.defense_enabled) {
          initiate_traceback(ev.time_s);
        }
      }
    }
  }

  const double next = ev.time_s + cfg_.detector.window_s;
  if (next <= cfg_.sim_time_s + kHorizonSlack) {
    Event boundary{next, 0, 0, EvKind::window_boundary, 0};
    boundary.window = completed + 1;
    schedule(boundary);
  }
}

RunResult Simulator::run() {
  setup();

  while (!events_.empty() && events_.top().time_s <= cfg_.sim_time_s + kHorizonSlack) {
    Event ev = events_.top();
    events_.pop();
    switch (ev.kind) {
      case EvKind::window_boundary:
        on_window_boundary(ev);
        break;
      case EvKind::service_done:
        on_service_done(ev);
        break;
      case EvKind::arrival:
        on_arrival(ev);
        break;
      case EvKind::emit:
        on_emit(ev);
        break;
      case EvKind::hello:
        on_hello(ev);
        break;
    }
  }

  // Structural in-flight count at the horizon: data packets still queued plus
  // data packets on the wire (arrival events past the horizon).
  std::uint64_t in_flight = 0;
  for (const Channel& ch : channels_) {
    for (const Packet& pkt : ch.queue) {
      if (pkt.kind == PacketKind::data) {
        ++in_flight;
      }
    }
  }
  while (!events_.empty()) {
    const Event& ev = events_.top();
    if (ev.kind == EvKind::arrival && ev.pkt.kind == PacketKind::data) {
      ++in_flight;
    }
    events_.pop();
  }
  result_.ledger.in_flight_end = in_flight;

  if (traceback_started_) {
    result_.attack_set = assemble(result_.evidence, cfg_.topology);
  }
  return std::move(result_);
}

}  // namespace

RunResult run(ScenarioConfig config) {
  Simulator simulator(std::move(config));
  return simulator.run();
}

}  // namespace ddsim
