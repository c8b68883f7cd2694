#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vspiker/network.hpp"

namespace vspiker {

struct DetectorConfig {
  /// Moving-average window in records; no smoothing when absent.
  std::optional<std::size_t> smoothing_window;
  double threshold = 0.0;
};

/// Trailing moving average: out[i] is the mean of in[max(0, i-w+1) ..= i].
std::vector<double> smooth(std::span<const double> signal, std::size_t window);

/// `count` thresholds evenly spaced over [min(signal), max(signal)].
std::vector<double> threshold_grid(std::span<const double> signal, std::size_t count);

/// alert[i] = signal[i] > threshold.
std::vector<bool> apply_threshold(std::span<const double> signal, double threshold);

struct Detection {
  std::vector<double> timestamps;
  std::vector<double> raw;
  std::vector<double> smoothed;
  std::vector<bool> alerts;
};

Detection detect(const SpikeSignal& signal, const DetectorConfig& config);

/// `timestamp,raw_count,smoothed,alert`.
std::string format_detection_csv(const Detection& detection, TimestampFormat format);

/// `timestamp,spike_count,alert`.
std::string format_spike_signal_csv(const SpikeSignal& signal, TimestampFormat format);

/// Reads the raw spike counts back from a detection CSV.
SpikeSignal parse_detection_csv(const std::string& text);

}  // namespace vspiker
