#include "vspiker/energy.hpp"

#include "vspiker/error.hpp"

namespace vspiker {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(std::size_t v, const char* what) {
  if (v == 0) fail(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
}
}  // namespace

MacEstimate vacuum_step_estimate(std::size_t neurons, bool recurrent, std::size_t layer_spikes) {
  require_positive(neurons, "layer size");
  if (layer_spikes > neurons)
    fail(ErrorCode::SpikeCountOutOfRange,
         std::to_string(layer_spikes) + " spikes in a layer of " + std::to_string(neurons));
  const MacCount n = neurons;
  MacEstimate e;
  e.update = n;
  e.spike = recurrent ? n + n * layer_spikes : n;
  return e;
}

MacCount vacuum_macs_per_step(std::size_t neurons, bool recurrent, std::size_t layer_spikes) {
  return vacuum_step_estimate(neurons, recurrent, layer_spikes).total();
}

RunMacs vacuum_macs_for_run(std::span<const std::uint32_t> layer_spikes, std::size_t neurons, bool recurrent) {
  if (layer_spikes.empty()) fail(ErrorCode::EmptySignal, "no steps to account");
  RunMacs run;
  run.per_step.reserve(layer_spikes.size());
  for (auto s : layer_spikes) {
    const MacCount m = vacuum_macs_per_step(neurons, recurrent, s);
    run.per_step.push_back(m);
    run.total += m;
  }
  run.mean = static_cast<double>(run.total) / static_cast<double>(layer_spikes.size());
  return run;
}

MacCount baseline_macs(const LayerSpec& spec) {
  return std::visit(
      overloaded{
          [](const layers::Dense& l) -> MacCount { return MacCount{l.inputs} * l.outputs; },
          [](const layers::Conv1d& l) -> MacCount {
            return MacCount{l.kernel} * l.in_channels * l.out_channels * l.output_size;
          },
          [](const layers::Lstm& l) -> MacCount {
            const MacCount n = l.units;
            return MacCount{l.sequence_length} * (4 * n * l.features + 4 * n * n + 12 * n);
          },
          [](const layers::BatchNorm& l) -> MacCount { return l.size; },
          [](const layers::AvgPool& l) -> MacCount { return MacCount{l.kernel} * l.output_size; },
          [](const layers::Ocsvm& l) -> MacCount { return MacCount{l.support_vectors} * (2 * l.dimensions + 2); },
          [](const layers::Lof& l) -> MacCount {
            // 2d + (k + 1)^2 + (k + 1); the training-set size does not enter.
            const MacCount k1 = MacCount{l.neighbours} + 1;
            return 2 * MacCount{l.dimensions} + k1 * k1 + k1;
          },
          [](const layers::VacuumSpiker& l) -> MacCount {
            return vacuum_macs_per_step(l.neurons, l.recurrent, l.layer_spikes);
          },
      },
      spec);
}

MacCount model_macs(std::span<const LayerSpec> specs) {
  if (specs.empty()) fail(ErrorCode::InvalidArgument, "a model needs at least one layer");
  MacCount total = 0;
  for (const auto& s : specs) total += baseline_macs(s);
  return total;
}

std::string layer_name(const LayerSpec& spec) {
  return std::visit(overloaded{
                        [](const layers::Dense&) { return std::string("dense"); },
                        [](const layers::Conv1d&) { return std::string("conv1d"); },
                        [](const layers::Lstm&) { return std::string("lstm"); },
                        [](const layers::BatchNorm&) { return std::string("batch_norm"); },
                        [](const layers::AvgPool&) { return std::string("avg_pool"); },
                        [](const layers::Ocsvm&) { return std::string("ocsvm"); },
                        [](const layers::Lof&) { return std::string("lof"); },
                        [](const layers::VacuumSpiker&) { return std::string("vacuum_spiker"); },
                    },
                    spec);
}

LayerSpec layer_from_json(const nlohmann::json& j) {
  auto positive = [&](const char* key) -> std::size_t {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0)
      fail(ErrorCode::Config, "layer " + j.dump() + " needs a positive integer '" + key + "'");
    return j[key].get<std::size_t>();
  };
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(ErrorCode::Config, "layer descriptor needs a string 'type': " + j.dump());
  const auto type = j["type"].get<std::string>();
  if (type == "dense") return layers::Dense{positive("inputs"), positive("outputs")};
  if (type == "conv1d")
    return layers::Conv1d{positive("kernel"), positive("in_channels"), positive("out_channels"),
                          positive("output_size")};
  if (type == "lstm") return layers::Lstm{positive("sequence_length"), positive("units"), positive("features")};
  if (type == "batch_norm") return layers::BatchNorm{positive("size")};
  if (type == "avg_pool") return layers::AvgPool{positive("kernel"), positive("output_size")};
  if (type == "ocsvm") return layers::Ocsvm{positive("support_vectors"), positive("dimensions")};
  if (type == "lof") {
    const std::size_t n_train = j.contains("training_points") ? positive("training_points") : 1;
    return layers::Lof{positive("dimensions"), positive("neighbours"), n_train};
  }
  if (type == "vacuum_spiker") {
    const bool recurrent = j.value("recurrent", false);
    const std::size_t spikes = j.value("layer_spikes", std::size_t{0});
    return layers::VacuumSpiker{positive("neurons"), recurrent, spikes};
  }
  fail(ErrorCode::Config, "unknown layer type '" + type + "'");
}

std::vector<LayerSpec> architecture_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object() && j.contains("layers")) list = &j["layers"];
  if (!list->is_array() || list->empty()) fail(ErrorCode::Config, "architecture must be a non-empty list of layers");
  std::vector<LayerSpec> specs;
  for (const auto& layer : *list) specs.push_back(layer_from_json(layer));
  return specs;
}

}  // namespace vspiker
