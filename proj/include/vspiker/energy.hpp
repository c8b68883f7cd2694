#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace vspiker {

using MacCount = std::uint64_t;

struct MacEstimate {
  MacCount update = 0;  // membrane updates, one per layer neuron
  MacCount spike = 0;   // input spike fan-out plus recurrent fan-out
  MacCount total() const noexcept { return update + spike; }
};

/// MACs of one inference step of the spiking detector with `neurons` layer
/// neurons of which `layer_spikes` fired: n (s_r + 2) with recurrence, 2n
/// without.
MacEstimate vacuum_step_estimate(std::size_t neurons, bool recurrent, std::size_t layer_spikes);
MacCount vacuum_macs_per_step(std::size_t neurons, bool recurrent, std::size_t layer_spikes);

struct RunMacs {
  double mean = 0.0;
  MacCount total = 0;
  std::vector<MacCount> per_step;
};

RunMacs vacuum_macs_for_run(std::span<const std::uint32_t> layer_spikes, std::size_t neurons, bool recurrent);

namespace layers {
struct Dense {
  std::size_t inputs, outputs;
};
struct Conv1d {
  std::size_t kernel, in_channels, out_channels, output_size;
};
struct Lstm {
  std::size_t sequence_length, units, features;
};
struct BatchNorm {
  std::size_t size;
};
struct AvgPool {
  std::size_t kernel, output_size;
};
struct Ocsvm {
  std::size_t support_vectors, dimensions;
};
struct Lof {
  std::size_t dimensions, neighbours, training_points;
};
/// The spiking detector itself, at a fixed per-step layer spike count.
struct VacuumSpiker {
  std::size_t neurons;
  bool recurrent;
  std::size_t layer_spikes;
};
}  // namespace layers

using LayerSpec = std::variant<layers::Dense, layers::Conv1d, layers::Lstm, layers::BatchNorm, layers::AvgPool,
                               layers::Ocsvm, layers::Lof, layers::VacuumSpiker>;

/// Per-sample MACs of one layer; nonlinear activations are not counted.
MacCount baseline_macs(const LayerSpec& spec);
MacCount model_macs(std::span<const LayerSpec> specs);

std::string layer_name(const LayerSpec& spec);

/// Layer descriptors such as {"type": "dense", "inputs": 32, "outputs": 64}.
LayerSpec layer_from_json(const nlohmann::json& j);
std::vector<LayerSpec> architecture_from_json(const nlohmann::json& j);

}  // namespace vspiker
