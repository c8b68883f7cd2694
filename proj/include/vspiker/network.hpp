#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vspiker/interval_encoder.hpp"
#include "vspiker/lif.hpp"
#include "vspiker/rng.hpp"
#include "vspiker/timeseries.hpp"

namespace vspiker {

/// Dense row-major matrix; rows are presynaptic neurons, columns postsynaptic.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  void append_rows(std::size_t count) {
    data_.resize((rows_ + count) * cols_, 0.0);
    rows_ += count;
  }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct WeightBounds {
  std::optional<double> min;
  std::optional<double> max;

  double apply(double w) const noexcept {
    if (min && w < *min) return *min;
    if (max && w > *max) return *max;
    return w;
  }
  bool active() const noexcept { return min || max; }

  friend bool operator==(const WeightBounds&, const WeightBounds&) = default;
};

struct NetworkConfig {
  std::size_t neurons = 100;  // size of the processing layer R
  bool recurrent = false;
  double forward_init_mean = 0.05;
  double forward_init_std = 0.1;
  /// Off-diagonal recurrent weight; the diagonal is zero.
  double recurrent_init_offdiag = -0.025;
  LifParams lif;
  std::uint64_t seed = 0;
  /// Unbounded unless set.
  WeightBounds bounds;

  void validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct StepResult {
  bool alert = false;
  std::size_t spike_count = 0;
  std::size_t input_neuron = 0;
};

/// Per-record spike counts of the processing layer, with alerts at the
/// threshold used for the run.
struct SpikeSignal {
  std::vector<double> timestamps;
  std::vector<std::uint32_t> counts;
  std::vector<bool> alerts;

  std::size_t size() const noexcept { return counts.size(); }
  bool empty() const noexcept { return counts.empty(); }
  std::vector<double> as_doubles() const { return {counts.begin(), counts.end()}; }
};

/// Interval-coded input layer densely connected to a layer of LIF neurons,
/// with an optional dense recurrent connection on that layer.
///
/// Each step encodes one value to one input spike, which delivers its
/// forward weight row to the layer in the same step. Recurrent feedback
/// carries the previous step's spikes. The step alerts when the number of
/// layer spikes exceeds the threshold.
class Network {
 public:
  static Network build(const NetworkConfig& config, IntervalEncoder encoder);

  StepResult infer_step(double value, double theta);

  /// Adds freshly drawn forward rows until there are `new_count` inputs.
  void grow_input(std::size_t new_count);

  SpikeSignal run_series(const TimeSeries& series, double theta);

  /// Layer back at rest, no pending recurrent spikes. Weights untouched.
  void reset_state();

  /// Current the layer would receive this step if `input_neuron` spiked.
  std::vector<double> input_current(std::size_t input_neuron) const;

  void set_previous_spikes(std::span<const std::uint8_t> mask);

  const NetworkConfig& config() const noexcept { return config_; }
  const IntervalEncoder& encoder() const noexcept { return encoder_; }
  std::size_t neurons() const noexcept { return config_.neurons; }
  std::size_t input_count() const noexcept { return forward_.rows(); }
  bool recurrent() const noexcept { return recurrent_.has_value(); }

  WeightMatrix& forward_weights() noexcept { return forward_; }
  const WeightMatrix& forward_weights() const noexcept { return forward_; }
  WeightMatrix* recurrent_weights() noexcept { return recurrent_ ? &*recurrent_ : nullptr; }
  const WeightMatrix* recurrent_weights() const noexcept { return recurrent_ ? &*recurrent_ : nullptr; }

  const LifLayerState& layer() const noexcept { return layer_; }
  const std::vector<std::uint8_t>& previous_spikes() const noexcept { return previous_spikes_; }
  /// Layer neurons that spiked in the most recent step.
  std::span<const std::size_t> last_spikes() const noexcept { return last_spikes_; }
  std::uint64_t step_count() const noexcept { return step_count_; }

  /// Initial value of forward weight (row, col) for this seed.
  double initial_forward_weight(std::size_t row, std::size_t col) const;

  nlohmann::json to_json() const;
  static Network from_json(const nlohmann::json& j);

  /// Compares configuration, weights and dynamic state.
  friend bool operator==(const Network& a, const Network& b);

 private:
  Network(const NetworkConfig& config, IntervalEncoder encoder);

  NetworkConfig config_;
  IntervalEncoder encoder_;
  CounterRng forward_rng_;
  WeightMatrix forward_;
  std::optional<WeightMatrix> recurrent_;
  LifLayerState layer_;
  std::vector<std::uint8_t> previous_spikes_;
  std::vector<std::size_t> last_spikes_;
  std::uint64_t step_count_ = 0;
  std::vector<double> current_;
};

}  // namespace vspiker
