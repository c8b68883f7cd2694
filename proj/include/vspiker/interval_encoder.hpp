#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "json.hpp"

namespace vspiker {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The symmetric bound [2 min(D) - max(D), 2 max(D) - min(D)].
Interval default_clamp(const Interval& domain);

struct EncoderConfig {
  /// Initial domain; its width must be a whole number of intervals.
  Interval domain;
  double interval_length = 1.0;
  Interval clamp;
  std::size_t max_neurons = 100'000;

  void validate() const;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

/// Single-spike interval coding.
///
/// The input domain is tiled by contiguous intervals of equal length, each
/// owned by one input neuron. Every encoded value is first clamped to the
/// configured bound; if it falls outside the current tiling, whole intervals
/// aligned to the existing grid are appended on that side, each owned by a
/// fresh neuron, until it is covered. Intervals are half-open `[a, a + len)`
/// except the rightmost one, which is closed so the upper edge of the domain
/// stays encodable.
class IntervalEncoder {
 public:
  explicit IntervalEncoder(const EncoderConfig& config);

  /// Interval length is `fraction * width(domain)`; the domain is widened to
  /// the right until a whole number of intervals tiles it. The clamp bound
  /// defaults to default_clamp(domain).
  static IntervalEncoder create(const Interval& domain, double fraction,
                                std::optional<Interval> clamp = std::nullopt,
                                std::size_t max_neurons = 100'000);

  /// Same, with an absolute interval length.
  static IntervalEncoder with_length(const Interval& domain, double length,
                                     std::optional<Interval> clamp = std::nullopt,
                                     std::size_t max_neurons = 100'000);

  /// Returns the index of the one input neuron that spikes for `value`.
  std::size_t encode(double value);

  std::size_t neuron_count() const noexcept { return slots_.size(); }
  Interval current_domain() const noexcept;
  /// Interval owned by `neuron`.
  Interval interval_of(std::size_t neuron) const;
  /// Neuron owning `value` without extending or clamping; nullopt when outside.
  std::optional<std::size_t> lookup(double value) const;

  const EncoderConfig& config() const noexcept { return config_; }
  double interval_length() const noexcept { return config_.interval_length; }

  nlohmann::json to_json() const;
  static IntervalEncoder from_json(const nlohmann::json& j);

  friend bool operator==(const IntervalEncoder&, const IntervalEncoder&) = default;

 private:
  double edge(std::int64_t slot) const noexcept;
  std::size_t slot_index(double value) const noexcept;

  EncoderConfig config_;
  // Slot j covers [domain.lo + j * len, domain.lo + (j + 1) * len); slots_[i]
  // holds the neuron of slot first_slot_ + i.
  std::int64_t first_slot_ = 0;
  std::deque<std::size_t> slots_;
  std::vector<std::int64_t> slot_of_neuron_;
};


}  // namespace vspiker
