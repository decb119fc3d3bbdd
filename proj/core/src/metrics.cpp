#include "ddsim/metrics.hpp"

#include <numeric>

#include "ddsim/errors.hpp"

namespace ddsim {

MetricSummary compute_metrics(const MetricsLedger& ledger, double sim_time_s) {
  if (!(sim_time_s > 0.0)) {
    throw ConfigError("sim_time_s must be > 0");
  }
  MetricSummary summary;
  summary.send = ledger.sent_data;
  summary.receive = ledger.received_data;
  summary.routing_packets = ledger.routing_packets;
  summary.dropped_packets = ledger.dropped_data;
  summary.dropped_bytes = ledger.dropped_bytes;
  summary.throughput_pps = static_cast<double>(ledger.received_data) / sim_time_s;
  if (ledger.sent_data > 0) {
    summary.pdf = static_cast<double>(ledger.received_data) /
                  static_cast<double>(ledger.sent_data);
  }
  if (ledger.received_data > 0) {
    summary.nrl = static_cast<double>(ledger.routing_packets) /
                  static_cast<double>(ledger.received_data);
  }
  if (!ledger.latency_samples_s.empty()) {
    const double sum = std::accumulate(ledger.latency_samples_s.begin(),
                                       ledger.latency_samples_s.end(), 0.0);
    summary.avg_delay_s = sum / static_cast<double>(ledger.latency_samples_s.size());
  }
  return summary;
}

}  // namespace ddsim
