#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vspiker/network.hpp"

namespace vspiker {

/// Amplitudes may take either sign: the sign of each constant alone decides
/// whether the updates it scales potentiate or depress.
struct StdpParams {
  double a_plus = 0.1;
  double a_minus = -0.1;
  double tau_plus = 1.051;   // ms
  double tau_minus = 1.051;  // ms

  void validate() const;

  friend bool operator==(const StdpParams&, const StdpParams&) = default;
};

/// Eligibility traces: 1 on a spike, decaying by exp(-1/tau) per step.
struct TraceState {
  std::vector<double> pre;
  std::vector<double> post;

  void reset(std::size_t pre_count, std::size_t post_count);
};

/// One step of pair-based STDP over all pre/post pairs.
///
/// Traces decay first. Each presynaptic spike then adds
/// `a_minus * post[Y]` to every outgoing weight (post spiked earlier), after
/// which its trace is set to 1. Each postsynaptic spike adds
/// `a_plus * pre[X]` to every incoming weight; presynaptic spikes of the same
/// step count here with weight `a_plus`. Postsynaptic traces are set last.
/// With `skip_diagonal`, w(i, i) is never touched.
void stdp_update(WeightMatrix& weights, TraceState& traces, std::span<const std::size_t> pre_spikes,
                 std::span<const std::size_t> post_spikes, const StdpParams& params,
                 const WeightBounds& bounds = {}, bool skip_diagonal = false);

struct TrainingOptions {
  StdpParams forward;
  std::optional<StdpParams> recurrent;
  int epochs = 1;
  /// Called after every plasticity update.
  std::function<void(const Network&, int epoch, std::size_t step)> on_step;
};

struct TrainingSummary {
  std::vector<std::size_t> spikes_per_epoch;
};

/// Streams `series` through the network `epochs` times with plasticity on
/// after every step. Layer state and traces reset before each epoch and once
/// more at the end, so detection starts from rest.
TrainingSummary train(Network& net, const TimeSeries& series, const TrainingOptions& options);

enum class SynapticBehaviour { Excitatory, Inhibitory, Balanced };
enum class ConnectionKind { Forward, Recurrent };

std::string_view to_string(SynapticBehaviour behaviour);

/// Prevalent effect of an (A-, A+) pair on a connection. Recurrent layers
/// fire equally often on both sides, so the sum of the amplitudes decides.
/// In the forward connection the input layer fires far more than the
/// processing layer, so A- (scaling the input-spike-triggered updates)
/// decides.
SynapticBehaviour classify_behaviour(ConnectionKind kind, double a_minus, double a_plus);

}  // namespace vspiker
