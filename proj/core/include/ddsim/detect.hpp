#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ddsim/flow.hpp"
#include "ddsim/types.hpp"

namespace ddsim {

/// Floor applied to the baseline standard deviation before thresholding, so a
/// constant baseline does not fire on sub-nano numerical noise.
inline constexpr double kStdFloorBits = 1e-6;

/// Running mean / standard deviation of windowed entropy, one-pass update.
/// Progression is suspended (frozen) while an attack is confirmed.
struct BaselineStats {
  std::uint64_t count{0};
  double mean{0.0};
  double m2{0.0};  // sum of squared deviations, bits^2
  bool frozen{false};

  /// Absorb one entropy value. Throws FrozenBaselineError while frozen.
  void absorb(double value_bits);

  /// Sample standard deviation, defined for count >= 2 only.
  /// Throws InsufficientBaselineError otherwise.
  double std_dev() const;

  bool has_std() const { return count >= 2; }
};

struct DetectorConfig {
  double window_s{1.0};                // w_s, traffic analysis window
  double deviation_multiplier_k{3.0};  // anomaly threshold in baseline sigmas
  int confirm_windows_m{2};            // consecutive anomalous windows to confirm
  int min_baseline_windows{30};        // warm-up before any verdict
  int rate_threshold{20};              // requests; strictly "more than" fires
  double rate_window_s{1.0};           // trailing request-rate window
  double block_duration_s{60.0};

  /// Throws ConfigError naming the violated invariant.
  void validate() const;

  bool operator==(const DetectorConfig&) const = default;
};

struct DetectionVerdict {
  std::int64_t window_index{0};
  double entropy_bits{0.0};
  double baseline_mean{0.0};
  double baseline_std{0.0};  // raw sigma, before the kStdFloorBits floor
  bool anomalous{false};
  bool attack_confirmed{false};
};

/// Two-sided deviation test of one window against the baseline.
/// anomalous = |H - mean| > k * max(sigma, kStdFloorBits); confirmed when the
/// last m windows (this one plus the tail of `recent`) are all anomalous.
/// On a confirmation transition the caller must freeze the baseline and
/// unfreeze it at the first later non-anomalous window (Detector does both).
/// Throws InsufficientBaselineError before min_baseline_windows.
DetectionVerdict test_window(const BaselineStats& stats, const EntropySample& sample,
                             const DetectorConfig& cfg,
                             std::span<const DetectionVerdict> recent);

/// Per-source request timestamps within the trailing rate window.
class RateTracker {
 public:
  /// Record a request from `source` at `now` and report whether the source
  /// exceeds rate_threshold requests inside (now - rate_window, now].
  /// Timestamps must be non-decreasing per source.
  bool rate_check(NodeId source, double now, const DetectorConfig& cfg);

  std::size_t pending(NodeId source) const;

 private:
  std::unordered_map<NodeId, std::deque<double>> requests_;
};

/// Sources blocked until an expiry instant. Re-blocking extends, never
/// shortens.
class BlockList {
 public:
  /// Set the entry for `source` to now + block_duration (kept if an existing
  /// entry already expires later). Returns the new expiry.
  double block(NodeId source, double now, const DetectorConfig& cfg);

  /// True iff an entry exists with expiry strictly after `now`.
  bool is_blocked(NodeId source, double now) const;

  const std::map<NodeId, double>& entries() const { return entries_; }

 private:
  std::map<NodeId, double> entries_;
};

/// Victim-side detection pipeline: warm-up, baseline progression, per-window
/// verdicts, and the freeze/unfreeze protocol around confirmations.
///
/// Baseline policy: warm-up windows are always absorbed; after warm-up a
/// window is absorbed only when its verdict is non-anomalous, since anomalous
/// windows do not describe normal flows.
class Detector {
 public:
  explicit Detector(DetectorConfig cfg);

  /// Feed the entropy sample of one completed window, in window order.
  /// Returns no verdict during warm-up.
  std::optional<DetectionVerdict> observe(const EntropySample& sample);

  bool warm() const;
  const BaselineStats& baseline() const { return stats_; }
  const DetectorConfig& config() const { return cfg_; }
  bool attack_active() const { return stats_.frozen; }

 private:
  DetectorConfig cfg_;
  BaselineStats stats_;
  std::vector<DetectionVerdict> recent_;  // bounded at confirm_windows_m - 1
};

}  // namespace ddsim
