#include "ddsim/detect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddsim/errors.hpp"

namespace ddsim {

void BaselineStats::absorb(double value_bits) {
  if (frozen) {
    throw FrozenBaselineError("baseline progression is suspended while an attack is confirmed");
  }
  ++count;
  const double delta = value_bits - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (value_bits - mean);
  if (m2 < 0.0) {
    m2 = 0.0;  // guard against tiny negative rounding
  }
}

double BaselineStats::std_dev() const {
  if (count < 2) {
    throw InsufficientBaselineError("standard deviation needs at least two baseline windows");
  }
  return std::sqrt(m2 / static_cast<double>(count - 1));
}

void DetectorConfig::validate() const {
  if (!(window_s > 0.0)) {
    throw ConfigError("detector.window_s must be > 0");
  }
  if (!(deviation_multiplier_k > 0.0)) {
    throw ConfigError("detector.deviation_multiplier_k must be > 0");
  }
  if (confirm_windows_m < 1) {
    throw ConfigError("detector.confirm_windows_m must be >= 1");
  }
  if (min_baseline_windows < 2) {
    throw ConfigError("detector.min_baseline_windows must be >= 2");
  }
  if (rate_threshold < 1) {
    throw ConfigError("detector.rate_threshold must be >= 1");
  }
  if (!(rate_window_s > 0.0)) {
    throw ConfigError("detector.rate_window_s must be > 0");
  }
  if (!(block_duration_s > 0.0)) {
    throw ConfigError("detector.block_duration_s must be > 0");
  }
}

DetectionVerdict test_window(const BaselineStats& stats, const EntropySample& sample,
                             const DetectorConfig& cfg,
                             std::span<const DetectionVerdict> recent) {
  if (stats.count < static_cast<std::uint64_t>(cfg.min_baseline_windows)) {
    throw InsufficientBaselineError(
        "baseline holds " + std::to_string(stats.count) + " windows, needs " +
        std::to_string(cfg.min_baseline_windows));
  }
  DetectionVerdict verdict;
  verdict.window_index = sample.window_index;
  verdict.entropy_bits = sample.value_bits;
  verdict.baseline_mean = stats.mean;
  verdict.baseline_std = stats.std_dev();

  const double sigma = std::max(verdict.baseline_std, kStdFloorBits);
  verdict.anomalous =
      std::abs(sample.value_bits - stats.mean) > cfg.deviation_multiplier_k * sigma;

  if (verdict.anomalous) {
    int streak = 1;
    for (auto it = recent.rbegin(); it != recent.rend() && it->anomalous; ++it) {
      ++streak;
    }
    verdict.attack_confirmed = streak >= cfg.confirm_windows_m;
  }
  return verdict;
}

bool RateTracker::rate_check(NodeId source, double now, const DetectorConfig& cfg) {
  auto& window = requests_[source];
  // Retention is (now - rate_window, now]: a request exactly rate_window old
  // has left the window.
  while (!window.empty() && window.front() <= now - cfg.rate_window_s) {
    window.pop_front();
  }
  window.push_back(now);
  return window.size() > static_cast<std::size_t>(cfg.rate_threshold);
}

std::size_t RateTracker::pending(NodeId source) const {
  auto it = requests_.find(source);
  return it == requests_.end() ? 0 : it->second.size();
}

double BlockList::block(NodeId source, double now, const DetectorConfig& cfg) {
  const double expiry = now + cfg.block_duration_s;
  auto [it, inserted] = entries_.try_emplace(source, expiry);
  if (!inserted) {
    it->second = std::max(it->second, expiry);
  }
  return it->second;
}

bool BlockList::is_blocked(NodeId source, double now) const {
  auto it = entries_.find(source);
  return it != entries_.end() && it->second > now;
}

Detector::Detector(DetectorConfig cfg) : cfg_(cfg) {
  cfg_.validate();
}

bool Detector::warm() const {
  return stats_.count >= static_cast<std::uint64_t>(cfg_.min_baseline_windows);
}

std::optional<DetectionVerdict> Detector::observe(const EntropySample& sample) {
  if (!warm()) {
    stats_.absorb(sample.value_bits);
    return std::nullopt;
  }

  const bool was_confirmed = !recent_.empty() && recent_.back().attack_confirmed;
  DetectionVerdict verdict = test_window(stats_, sample, cfg_, recent_);

  if (verdict.attack_confirmed && !was_confirmed) {
    stats_.frozen = true;
  }
  if (!verdict.anomalous) {
    stats_.frozen = false;
    stats_.absorb(sample.value_bits);
  }

  recent_.push_back(verdict);
  const std::size_t keep = static_cast<std::size_t>(std::max(cfg_.confirm_windows_m, 1));
  if (recent_.size() > keep) {
    recent_.erase(recent_.begin(), recent_.end() - keep);
  }
  return verdict;
}

}  // namespace ddsim
