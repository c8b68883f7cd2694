#include "vspiker/detector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vspiker/error.hpp"
#include "vspiker/text.hpp"

namespace vspiker {

std::vector<double> smooth(std::span<const double> signal, std::size_t window) {
  if (window < 1) fail(ErrorCode::BadWindow, "smoothing window must be at least 1");
  std::vector<double> out(signal.size());
  // Exact for integer spike counts.
  long double sum = 0.0L;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    sum += signal[i];
    if (i >= window) sum -= signal[i - window];
    const std::size_t n = std::min(i + 1, window);
    out[i] = static_cast<double>(sum / static_cast<long double>(n));
  }
  // Rounding in the running sum must not push a mean outside [min, max].
  if (!signal.empty()) {
    const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
    for (double& x : out) x = std::clamp(x, *lo, *hi);
  }
  return out;
}

std::vector<double> threshold_grid(std::span<const double> signal, std::size_t count) {
  if (signal.empty()) fail(ErrorCode::EmptySignal, "threshold grid of an empty signal");
  if (count < 2) fail(ErrorCode::InvalidArgument, "threshold grid needs at least 2 points");
  const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
  std::vector<double> grid(count);
  const double step = (*hi - *lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = *lo + step * static_cast<double>(i);
  grid.back() = *hi;
  return grid;
}

std::vector<bool> apply_threshold(std::span<const double> signal, double threshold) {
  std::vector<bool> alerts(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) alerts[i] = signal[i] > threshold;
  return alerts;
}

Detection detect(const SpikeSignal& signal, const DetectorConfig& config) {
  Detection d;
  d.timestamps = signal.timestamps;
  d.raw = signal.as_doubles();
  d.smoothed = config.smoothing_window ? smooth(d.raw, *config.smoothing_window) : d.raw;
  d.alerts = apply_threshold(d.smoothed, config.threshold);
  return d;
}

std::string format_detection_csv(const Detection& detection, TimestampFormat format) {
  std::string out = "timestamp,raw_count,smoothed,alert\n";
  for (std::size_t i = 0; i < detection.raw.size(); ++i) {
    out += format_timestamp(detection.timestamps[i], format);
    out += ',' + format_double(detection.raw[i]);
    out += ',' + format_double(detection.smoothed[i]);
    out += detection.alerts[i] ? ",1\n" : ",0\n";
  }
  return out;
}

std::string format_spike_signal_csv(const SpikeSignal& signal, TimestampFormat format) {
  std::string out = "timestamp,spike_count,alert\n";
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out += format_timestamp(signal.timestamps[i], format);
    out += ',' + std::to_string(signal.counts[i]);
    out += signal.alerts[i] ? ",1\n" : ",0\n";
  }
  return out;
}

SpikeSignal parse_detection_csv(const std::string& text) {
  CsvSchema schema;
  schema.value_column = "raw_count";
  schema.label_column = "alert";
  schema.allow_empty = true;
  const auto series = parse_csv(text, schema);
  SpikeSignal signal;
  signal.timestamps = series.timestamps;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = series.values[i];
    if (v < 0.0 || v != std::floor(v)) fail(ErrorCode::MalformedRow, "raw_count must be a non-negative integer");
    signal.counts.push_back(static_cast<std::uint32_t>(v));
    signal.alerts.push_back(series.is_anomalous(i));
  }
  return signal;
}

}  // namespace vspiker
