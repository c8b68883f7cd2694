#include "vspiker/stdp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vspiker/error.hpp"

namespace vspiker {

void StdpParams::validate() const {
  if (!(tau_plus > 0.0) || !(tau_minus > 0.0))
    fail(ErrorCode::InvalidArgument, "STDP time constants must be positive");
}

void TraceState::reset(std::size_t pre_count, std::size_t post_count) {
  pre.assign(pre_count, 0.0);
  post.assign(post_count, 0.0);
}

void stdp_update(WeightMatrix& weights, TraceState& traces, std::span<const std::size_t> pre_spikes,
                 std::span<const std::size_t> post_spikes, const StdpParams& params,
                 const WeightBounds& bounds, bool skip_diagonal) {
  // Inputs appended since the last step start with an empty trace.
  if (traces.pre.size() < weights.rows()) traces.pre.resize(weights.rows(), 0.0);
  if (traces.post.size() < weights.cols()) traces.post.resize(weights.cols(), 0.0);
  if (traces.pre.size() != weights.rows() || traces.post.size() != weights.cols())
    fail(ErrorCode::DimensionMismatch, "traces do not match the weight matrix");

  const double pre_decay = std::exp(-1.0 / params.tau_plus);
  const double post_decay = std::exp(-1.0 / params.tau_minus);
  for (double& x : traces.pre) x *= pre_decay;
  for (double& y : traces.post) y *= post_decay;

  const std::size_t cols = weights.cols();
  for (std::size_t x : pre_spikes) {
    if (x >= weights.rows()) fail(ErrorCode::DimensionMismatch, "presynaptic index out of range");
    auto row = weights.row(x);
    for (std::size_t y = 0; y < cols; ++y) {
      if (skip_diagonal && x == y) continue;
      row[y] = bounds.apply(row[y] + params.a_minus * traces.post[y]);
    }
    traces.pre[x] = 1.0;
  }
  for (std::size_t y : post_spikes) {
    if (y >= cols) fail(ErrorCode::DimensionMismatch, "postsynaptic index out of range");
    for (std::size_t x = 0; x < weights.rows(); ++x) {
      if (skip_diagonal && x == y) continue;
      const double trace = traces.pre[x];
      if (trace == 0.0) continue;
      weights(x, y) = bounds.apply(weights(x, y) + params.a_plus * trace);
    }
  }
  for (std::size_t y : post_spikes) traces.post[y] = 1.0;
}

TrainingSummary train(Network& net, const TimeSeries& series, const TrainingOptions& options) {
  if (options.epochs < 1 || options.epochs > 5)
    fail(ErrorCode::InvalidArgument, "epochs must lie in [1, 5], got " + std::to_string(options.epochs));
  options.forward.validate();
  if (net.recurrent() && !options.recurrent)
    fail(ErrorCode::MissingRecurrentParams, "recurrent network trained without recurrent STDP parameters");
  if (options.recurrent) options.recurrent->validate();
  for (std::size_t i = 0; i < series.size(); ++i)
    if (series.is_anomalous(i))
      fail(ErrorCode::AnomalyInTrainingData, "training record " + std::to_string(i) + " is labelled anomalous");

  const auto bounds = net.config().bounds;
  const double no_alert = std::numeric_limits<double>::infinity();
  TrainingSummary summary;
  TraceState forward_traces;
  TraceState recurrent_traces;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    net.reset_state();
    forward_traces.reset(net.input_count(), net.neurons());
    recurrent_traces.reset(net.neurons(), net.neurons());
    std::size_t spikes = 0;
    for (std::size_t t = 0; t < series.size(); ++t) {
      const auto result = net.infer_step(series.values[t], no_alert);
      spikes += result.spike_count;
      const std::size_t input[] = {result.input_neuron};
      stdp_update(net.forward_weights(), forward_traces, input, net.last_spikes(), options.forward, bounds);
      if (auto* w = net.recurrent_weights())
        stdp_update(*w, recurrent_traces, net.last_spikes(), net.last_spikes(), *options.recurrent, bounds,
                    /*skip_diagonal=*/true);
      if (options.on_step) options.on_step(net, epoch, t);
    }
    summary.spikes_per_epoch.push_back(spikes);
  }
  net.reset_state();
  return summary;
}

std::string_view to_string(SynapticBehaviour behaviour) {
  switch (behaviour) {
    case SynapticBehaviour::Excitatory: return "excitatory";
    case SynapticBehaviour::Inhibitory: return "inhibitory";
    case SynapticBehaviour::Balanced: return "balanced";
  }
  return "unknown";
}

namespace {
SynapticBehaviour from_sign(double x) {
  if (x > 0.0) return SynapticBehaviour::Excitatory;
  if (x < 0.0) return SynapticBehaviour::Inhibitory;
  return SynapticBehaviour::Balanced;
}
}  // namespace

SynapticBehaviour classify_behaviour(ConnectionKind kind, double a_minus, double a_plus) {
  if (a_minus > 0.0 && a_plus > 0.0) return SynapticBehaviour::Excitatory;
  if (a_minus < 0.0 && a_plus < 0.0) return SynapticBehaviour::Inhibitory;
  if (kind == ConnectionKind::Recurrent) {
    const double sum = a_minus + a_plus;
    // Antisymmetric pairs cancel up to rounding.
    if (std::abs(sum) <= 1e-12 * std::max(std::abs(a_minus), std::abs(a_plus))) return SynapticBehaviour::Balanced;
    return from_sign(sum);
  }
  return a_minus != 0.0 ? from_sign(a_minus) : from_sign(a_plus);
}

}  // namespace vspiker
