#include "vspiker/lif.hpp"

#include <string>

#include "vspiker/error.hpp"

namespace vspiker {

void LifParams::validate() const {
  if (!(capacitance > 0.0)) fail(ErrorCode::InvalidArgument, "capacitance must be positive");
  if (!(leak > 0.0 && leak < 1.0)) fail(ErrorCode::InvalidArgument, "g_L must lie in (0, 1)");
  if (!(threshold > resting_potential))
    fail(ErrorCode::InvalidArgument, "spike threshold must exceed the resting potential");
  if (refractory_steps < 0) fail(ErrorCode::InvalidArgument, "refractory period must be non-negative");
}

LifLayerState reset_layer(std::size_t n, const LifParams& params) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "a layer needs at least one neuron");
  params.validate();
  LifLayerState state;
  state.voltages.assign(n, params.resting_potential);
  state.refractory_remaining.assign(n, 0);
  state.spiked.assign(n, 0);
  return state;
}

std::size_t step(LifLayerState& state, const LifParams& params, std::span<const double> input_current) {
  const std::size_t n = state.size();
  if (input_current.size() != n)
    fail(ErrorCode::DimensionMismatch, "input current has " + std::to_string(input_current.size()) +
                                           " entries for " + std::to_string(n) + " neurons");
  const double retain = 1.0 - params.leak;
  const double inv_c = 1.0 / params.capacitance;
  std::size_t spikes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (state.refractory_remaining[i] > 0) {
      --state.refractory_remaining[i];
      state.voltages[i] = params.reset_potential;
      state.spiked[i] = 0;
      continue;
    }
    double v = params.resting_potential + (state.voltages[i] - params.resting_potential) * retain;
    v += input_current[i] * inv_c;
    if (v >= params.threshold) {
      state.voltages[i] = params.reset_potential;
      state.refractory_remaining[i] = params.refractory_steps;
      state.spiked[i] = 1;
      ++spikes;
    } else {
      state.voltages[i] = v;
      state.spiked[i] = 0;
    }
  }
  return spikes;
}

}  // namespace vspiker
