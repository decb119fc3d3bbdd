#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ddsim/flow.hpp"

namespace ddsim {

/// Raw counters accumulated over one run. Data packets satisfy
/// sent = received + dropped + in-flight at the horizon; dropped_bytes sums
/// the sizes of dropped data packets only. routing_packets counts every
/// control-kind transmission accepted onto a link, traceback requests
/// included.
struct MetricsLedger {
  std::uint64_t sent_data{0};
  std::uint64_t received_data{0};
  std::uint64_t dropped_data{0};
  std::uint64_t in_flight_end{0};
  std::uint64_t dropped_bytes{0};
  std::uint64_t routing_packets{0};
  std::vector<double> latency_samples_s;
  std::vector<EntropySample> entropy_trace;
};

/// The summary row: throughput = received / sim_time, PDF = received / sent,
/// NRL = routing / received, avg delay = mean latency. Ratios whose
/// denominator is zero are absent.
struct MetricSummary {
  std::uint64_t send{0};
  std::uint64_t receive{0};
  std::uint64_t routing_packets{0};
  double throughput_pps{0.0};
  std::optional<double> pdf;
  std::optional<double> nrl;
  std::optional<double> avg_delay_s;
  std::uint64_t dropped_packets{0};
  std::uint64_t dropped_bytes{0};
};

MetricSummary compute_metrics(const MetricsLedger& ledger, double sim_time_s);

}  // namespace ddsim
