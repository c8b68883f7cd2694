#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vspiker {

/// Per-step leak factor 1 - exp(-1 / tau) for a membrane time constant in steps.
inline double leak_for_time_constant(double tau_steps) { return 1.0 - std::exp(-1.0 / tau_steps); }

struct LifParams {
  double capacitance = 1.0;                          // uF
  double leak = leak_for_time_constant(100.0);       // g_L, fraction of (V - E_L) lost per step
  double resting_potential = -65.0;                  // mV
  double reset_potential = -65.0;                    // mV
  double threshold = -55.0;                          // mV
  int refractory_steps = 5;                          // 1 ms steps

  void validate() const;

  friend bool operator==(const LifParams&, const LifParams&) = default;
};

struct LifLayerState {
  std::vector<double> voltages;
  std::vector<int> refractory_remaining;
  std::vector<std::uint8_t> spiked;

  std::size_t size() const noexcept { return voltages.size(); }

  friend bool operator==(const LifLayerState&, const LifLayerState&) = default;
};

/// Layer of `n` neurons at rest.
LifLayerState reset_layer(std::size_t n, const LifParams& params);

/// Advances the layer by one 1 ms step and returns the number of spikes.
///
/// Non-refractory neurons decay toward rest, then integrate
/// `input_current / C`; those at or above threshold spike, drop to the reset
/// potential and become refractory. Refractory neurons hold the reset
/// potential, ignore input and count down. The spike mask is left in
/// `state.spiked`.
std::size_t step(LifLayerState& state, const LifParams& params, std::span<const double> input_current);

}  // namespace vspiker
