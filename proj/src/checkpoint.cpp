#include "vspiker/checkpoint.hpp"

#include "vspiker/error.hpp"
#include "vspiker/text.hpp"

namespace vspiker {

namespace {

nlohmann::json matrix_to_json(const WeightMatrix& w) {
  return {{"rows", w.rows()}, {"cols", w.cols()}, {"data", encode_doubles(w.data())}};
}

WeightMatrix matrix_from_json(const nlohmann::json& j) {
  WeightMatrix w(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  auto data = decode_doubles(j.at("data").get<std::string>());
  if (data.size() != w.data().size()) fail(ErrorCode::Config, "weight payload size does not match its shape");
  w.data() = std::move(data);
  return w;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_number(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

nlohmann::json lif_params_to_json(const LifParams& p) {
  return {{"capacitance", p.capacitance},
          {"leak", p.leak},
          {"resting_potential", p.resting_potential},
          {"reset_potential", p.reset_potential},
          {"threshold", p.threshold},
          {"refractory_steps", p.refractory_steps}};
}

LifParams lif_params_from_json(const nlohmann::json& j) {
  LifParams p;
  p.capacitance = j.at("capacitance").get<double>();
  p.leak = j.at("leak").get<double>();
  p.resting_potential = j.at("resting_potential").get<double>();
  p.reset_potential = j.at("reset_potential").get<double>();
  p.threshold = j.at("threshold").get<double>();
  p.refractory_steps = j.at("refractory_steps").get<int>();
  return p;
}

nlohmann::json Network::to_json() const {
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["network"] = {{"neurons", config_.neurons},
                  {"recurrent", config_.recurrent},
                  {"forward_init_mean", config_.forward_init_mean},
                  {"forward_init_std", config_.forward_init_std},
                  {"recurrent_init_offdiag", config_.recurrent_init_offdiag},
                  {"seed", config_.seed},
                  {"weight_min", optional_number(config_.bounds.min)},
                  {"weight_max", optional_number(config_.bounds.max)}};
  j["lif"] = lif_params_to_json(config_.lif);
  j["encoder"] = encoder_.to_json();
  j["weights"] = {{"forward", matrix_to_json(forward_)},
                  {"recurrent", recurrent_ ? matrix_to_json(*recurrent_) : nlohmann::json(nullptr)}};
  j["state"] = {{"voltages", encode_doubles(layer_.voltages)},
                {"refractory_remaining", layer_.refractory_remaining},
                {"spiked", layer_.spiked},
                {"previous_spikes", previous_spikes_},
                {"step_count", step_count_}};
  // Forward weights are a pure function of (seed, stream, row, col); the
  // cursor is the number of rows drawn so far.
  j["rng"] = {{"seed", forward_rng_.seed()}, {"stream", forward_rng_.stream()}, {"forward_rows_drawn", forward_.rows()}};
  return j;
}

Network Network::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", std::string{}) != kCheckpointFormat)
    fail(ErrorCode::Config, "not a checkpoint document");
  const int version = j.value("version", -1);
  if (version != kCheckpointVersion)
    fail(ErrorCode::CheckpointVersion, "checkpoint version " + std::to_string(version) + ", expected " +
                                           std::to_string(kCheckpointVersion));
  try {
    const auto& n = j.at("network");
    NetworkConfig config;
    config.neurons = n.at("neurons").get<std::size_t>();
    config.recurrent = n.at("recurrent").get<bool>();
    config.forward_init_mean = n.at("forward_init_mean").get<double>();
    config.forward_init_std = n.at("forward_init_std").get<double>();
    config.recurrent_init_offdiag = n.at("recurrent_init_offdiag").get<double>();
    config.seed = n.at("seed").get<std::uint64_t>();
    config.bounds.min = optional_number(n.at("weight_min"));
    config.bounds.max = optional_number(n.at("weight_max"));
    config.lif = lif_params_from_json(j.at("lif"));
    config.validate();

    Network net(config, IntervalEncoder::from_json(j.at("encoder")));
    net.forward_ = matrix_from_json(j.at("weights").at("forward"));
    const auto& rec = j.at("weights").at("recurrent");
    if (config.recurrent != !rec.is_null()) fail(ErrorCode::Config, "recurrent weights disagree with the config");
    if (!rec.is_null()) net.recurrent_ = matrix_from_json(rec);
    if (net.forward_.cols() != config.neurons || net.forward_.rows() != net.encoder_.neuron_count())
      fail(ErrorCode::Config, "forward weight shape disagrees with encoder and layer sizes");

    const auto& s = j.at("state");
    net.layer_.voltages = decode_doubles(s.at("voltages").get<std::string>());
    net.layer_.refractory_remaining = s.at("refractory_remaining").get<std::vector<int>>();
    net.layer_.spiked = s.at("spiked").get<std::vector<std::uint8_t>>();
    net.previous_spikes_ = s.at("previous_spikes").get<std::vector<std::uint8_t>>();
    net.step_count_ = s.at("step_count").get<std::uint64_t>();
    if (net.layer_.voltages.size() != config.neurons || net.layer_.refractory_remaining.size() != config.neurons ||
        net.layer_.spiked.size() != config.neurons || net.previous_spikes_.size() != config.neurons)
      fail(ErrorCode::Config, "layer state size disagrees with the layer size");
    for (std::size_t i = 0; i < config.neurons; ++i)
      if (net.layer_.spiked[i]) net.last_spikes_.push_back(i);
    return net;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Network& net, const nlohmann::json& metadata) {
  auto doc = net.to_json();
  doc["metadata"] = metadata;
  write_file(path, doc.dump(2) + "\n");
}

Network load_checkpoint(const std::filesystem::path& path, nlohmann::json* metadata) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, "checkpoint " + path.string() + " is not JSON: " + e.what());
  }
  auto net = Network::from_json(doc);
  if (metadata) *metadata = doc.value("metadata", nlohmann::json::object());
  return net;
}

}  // namespace vspiker
