#include "vspiker/network.hpp"

#include <algorithm>
#include <string>

#include "vspiker/error.hpp"

namespace vspiker {

namespace {
constexpr std::uint64_t kForwardStream = 1;
}

void NetworkConfig::validate() const {
  if (neurons == 0) fail(ErrorCode::InvalidArgument, "the processing layer needs at least one neuron");
  if (!(forward_init_std >= 0.0)) fail(ErrorCode::InvalidArgument, "weight std must be non-negative");
  if (bounds.min && bounds.max && *bounds.min > *bounds.max)
    fail(ErrorCode::InvalidArgument, "weight lower bound exceeds upper bound");
  lif.validate();
}

Network::Network(const NetworkConfig& config, IntervalEncoder encoder)
    : config_(config),
      encoder_(std::move(encoder)),
      forward_rng_(config.seed, kForwardStream),
      forward_(0, config.neurons) {}

Network Network::build(const NetworkConfig& config, IntervalEncoder encoder) {
  config.validate();
  Network net(config, std::move(encoder));
  net.grow_input(net.encoder_.neuron_count());
  if (config.recurrent) {
    WeightMatrix w(config.neurons, config.neurons, config.recurrent_init_offdiag);
    for (std::size_t i = 0; i < config.neurons; ++i) w(i, i) = 0.0;
    net.recurrent_ = std::move(w);
  }
  net.reset_state();
  return net;
}

double Network::initial_forward_weight(std::size_t row, std::size_t col) const {
  const auto counter = static_cast<std::uint64_t>(row) * config_.neurons + col;
  return config_.forward_init_mean + config_.forward_init_std * forward_rng_.normal(counter);
}

void Network::grow_input(std::size_t new_count) {
  const std::size_t old = forward_.rows();
  if (new_count == old) return;
  if (new_count < old)
    fail(ErrorCode::InvalidArgument, "cannot shrink the input layer from " + std::to_string(old) +
                                         " to " + std::to_string(new_count));
  if (new_count > encoder_.config().max_neurons)
    fail(ErrorCode::NeuronCapExceeded, std::to_string(new_count) + " inputs exceed the neuron cap");
  forward_.append_rows(new_count - old);
  for (std::size_t r = old; r < new_count; ++r)
    for (std::size_t c = 0; c < config_.neurons; ++c) forward_(r, c) = initial_forward_weight(r, c);
}

void Network::reset_state() {
  layer_ = reset_layer(config_.neurons, config_.lif);
  previous_spikes_.assign(config_.neurons, 0);
  last_spikes_.clear();
}

std::vector<double> Network::input_current(std::size_t input_neuron) const {
  if (input_neuron >= forward_.rows())
    fail(ErrorCode::InvalidArgument, "no input neuron " + std::to_string(input_neuron));
  const auto row = forward_.row(input_neuron);
  std::vector<double> current(row.begin(), row.end());
  if (recurrent_) {
    for (std::size_t j = 0; j < config_.neurons; ++j) {
      if (!previous_spikes_[j]) continue;
      const auto feedback = recurrent_->row(j);
      for (std::size_t i = 0; i < config_.neurons; ++i) current[i] += feedback[i];
    }
  }
  return current;
}

void Network::set_previous_spikes(std::span<const std::uint8_t> mask) {
  if (mask.size() != config_.neurons)
    fail(ErrorCode::DimensionMismatch, "spike mask size differs from the layer size");
  previous_spikes_.assign(mask.begin(), mask.end());
}

StepResult Network::infer_step(double value, double theta) {
  const std::size_t input = encoder_.encode(value);
  if (encoder_.neuron_count() > forward_.rows()) grow_input(encoder_.neuron_count());

  const auto row = forward_.row(input);
  current_.assign(row.begin(), row.end());
  if (recurrent_) {
    for (std::size_t j = 0; j < config_.neurons; ++j) {
      if (!previous_spikes_[j]) continue;
      const auto feedback = recurrent_->row(j);
      for (std::size_t i = 0; i < config_.neurons; ++i) current_[i] += feedback[i];
    }
  }

  const std::size_t spikes = step(layer_, config_.lif, current_);
  last_spikes_.clear();
  for (std::size_t i = 0; i < config_.neurons; ++i)
    if (layer_.spiked[i]) last_spikes_.push_back(i);
  previous_spikes_ = layer_.spiked;
  ++step_count_;
  return {static_cast<double>(spikes) > theta, spikes, input};
}

SpikeSignal Network::run_series(const TimeSeries& series, double theta) {
  SpikeSignal signal;
  signal.timestamps = series.timestamps;
  signal.counts.reserve(series.size());
  signal.alerts.reserve(series.size());
  for (double v : series.values) {
    const auto r = infer_step(v, theta);
    signal.counts.push_back(static_cast<std::uint32_t>(r.spike_count));
    signal.alerts.push_back(r.alert);
  }
  return signal;
}

bool operator==(const Network& a, const Network& b) {
  return a.config_ == b.config_ && a.encoder_ == b.encoder_ && a.forward_ == b.forward_ &&
         a.recurrent_ == b.recurrent_ && a.layer_ == b.layer_ && a.previous_spikes_ == b.previous_spikes_ &&
         a.step_count_ == b.step_count_;
}

}  // namespace vspiker
