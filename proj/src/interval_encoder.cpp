#include "vspiker/interval_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vspiker/error.hpp"

namespace vspiker {

namespace {
constexpr double kTilingTolerance = 1e-9;
}

Interval default_clamp(const Interval& domain) {
  return {2.0 * domain.lo - domain.hi, 2.0 * domain.hi - domain.lo};
}

void EncoderConfig::validate() const {
  if (!(domain.width() > 0.0) || !std::isfinite(domain.width()))
    fail(ErrorCode::DegenerateDomain, "initial domain must have positive finite width");
  if (!(interval_length > 0.0) || !std::isfinite(interval_length))
    fail(ErrorCode::BadFraction, "interval length must be positive");
  const double ratio = domain.width() / interval_length;
  if (std::abs(std::round(ratio) * interval_length - domain.width()) > kTilingTolerance * interval_length)
    fail(ErrorCode::InvalidArgument, "domain width is not a whole number of intervals");
  // The rightmost initial interval may overhang the bound by less than one interval.
  if (clamp.lo > domain.lo || clamp.hi < domain.hi - interval_length)
    fail(ErrorCode::InvalidArgument, "clamp bound must contain the initial domain");
  if (max_neurons == 0) fail(ErrorCode::InvalidArgument, "max_neurons must be positive");
}

IntervalEncoder::IntervalEncoder(const EncoderConfig& config) : config_(config) {
  config_.validate();
  const auto k = static_cast<std::size_t>(std::llround(config_.domain.width() / config_.interval_length));
  if (k > config_.max_neurons)
    fail(ErrorCode::NeuronCapExceeded, std::to_string(k) + " initial intervals exceed the neuron cap");
  for (std::size_t i = 0; i < k; ++i) {
    slots_.push_back(i);
    slot_of_neuron_.push_back(static_cast<std::int64_t>(i));
  }
}

IntervalEncoder IntervalEncoder::with_length(const Interval& domain, double length,
                                             std::optional<Interval> clamp, std::size_t max_neurons) {
  if (!(domain.width() > 0.0)) fail(ErrorCode::DegenerateDomain, "domain has zero width");
  if (!(length > 0.0) || !std::isfinite(length)) fail(ErrorCode::BadFraction, "interval length must be positive");
  EncoderConfig config;
  config.interval_length = length;
  const double k = std::max(1.0, std::ceil(domain.width() / length - kTilingTolerance));
  config.domain = {domain.lo, domain.lo + k * length};
  config.clamp = clamp.value_or(default_clamp(domain));
  config.max_neurons = max_neurons;
  return IntervalEncoder(config);
}

IntervalEncoder IntervalEncoder::create(const Interval& domain, double fraction,
                                        std::optional<Interval> clamp, std::size_t max_neurons) {
  if (!(domain.width() > 0.0)) fail(ErrorCode::DegenerateDomain, "domain has zero width");
  if (!(fraction > 0.0 && fraction <= 1.0))
    fail(ErrorCode::BadFraction, "interval fraction must lie in (0, 1]");
  return with_length(domain, fraction * domain.width(), clamp, max_neurons);
}

double IntervalEncoder::edge(std::int64_t slot) const noexcept {
  return config_.domain.lo + static_cast<double>(slot) * config_.interval_length;
}

Interval IntervalEncoder::current_domain() const noexcept {
  return {edge(first_slot_), edge(first_slot_ + static_cast<std::int64_t>(slots_.size()))};
}

Interval IntervalEncoder::interval_of(std::size_t neuron) const {
  if (neuron >= slot_of_neuron_.size())
    fail(ErrorCode::InvalidArgument, "no input neuron " + std::to_string(neuron));
  const auto slot = slot_of_neuron_[neuron];
  return {edge(slot), edge(slot + 1)};
}

std::size_t IntervalEncoder::slot_index(double value) const noexcept {
  const auto last = first_slot_ + static_cast<std::int64_t>(slots_.size()) - 1;
  auto j = static_cast<std::int64_t>(std::floor((value - config_.domain.lo) / config_.interval_length));
  j = std::clamp(j, first_slot_, last);
  // Division can land one slot off right at a boundary; settle against the edges.
  if (j > first_slot_ && value < edge(j)) --j;
  if (j < last && value >= edge(j + 1)) ++j;
  return static_cast<std::size_t>(j - first_slot_);
}

std::optional<std::size_t> IntervalEncoder::lookup(double value) const {
  const auto d = current_domain();
  if (!(value >= d.lo && value <= d.hi)) return std::nullopt;
  return slots_[slot_index(value)];
}

std::size_t IntervalEncoder::encode(double value) {
  if (std::isnan(value)) fail(ErrorCode::InvalidValue, "cannot encode NaN");
  value = std::clamp(value, config_.clamp.lo, config_.clamp.hi);

  std::int64_t add_left = 0;
  while (value < edge(first_slot_ - add_left)) ++add_left;
  const auto end_slot = first_slot_ + static_cast<std::int64_t>(slots_.size());
  std::int64_t add_right = 0;
  while (value > edge(end_slot + add_right)) ++add_right;

  if (add_left + add_right > 0) {
    const auto needed = slots_.size() + static_cast<std::size_t>(add_left + add_right);
    if (needed > config_.max_neurons)
      fail(ErrorCode::NeuronCapExceeded, "encoding " + std::to_string(value) + " needs " +
                                             std::to_string(needed) + " input neurons (cap " +
                                             std::to_string(config_.max_neurons) + ")");
    for (std::int64_t i = 0; i < add_left; ++i) {
      --first_slot_;
      slots_.push_front(slot_of_neuron_.size());
      slot_of_neuron_.push_back(first_slot_);
    }
    for (std::int64_t i = 0; i < add_right; ++i) {
      slots_.push_back(slot_of_neuron_.size());
      slot_of_neuron_.push_back(end_slot + i);
    }
  }
  return slots_[slot_index(value)];
}

nlohmann::json IntervalEncoder::to_json() const {
  return {
      {"domain", {config_.domain.lo, config_.domain.hi}},
      {"interval_length", config_.interval_length},
      {"clamp", {config_.clamp.lo, config_.clamp.hi}},
      {"max_neurons", config_.max_neurons},
      {"first_slot", first_slot_},
      {"neurons", std::vector<std::size_t>(slots_.begin(), slots_.end())},
  };
}

IntervalEncoder IntervalEncoder::from_json(const nlohmann::json& j) {
  EncoderConfig config;
  try {
    config.domain = {j.at("domain").at(0).get<double>(), j.at("domain").at(1).get<double>()};
    config.interval_length = j.at("interval_length").get<double>();
    config.clamp = {j.at("clamp").at(0).get<double>(), j.at("clamp").at(1).get<double>()};
    config.max_neurons = j.at("max_neurons").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("malformed encoder state: ") + e.what());
  }
  IntervalEncoder encoder(config);
  const auto neurons = j.at("neurons").get<std::vector<std::size_t>>();
  encoder.first_slot_ = j.at("first_slot").get<std::int64_t>();
  encoder.slots_.assign(neurons.begin(), neurons.end());
  encoder.slot_of_neuron_.assign(neurons.size(), 0);
  std::vector<bool> seen(neurons.size(), false);
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    if (neurons[i] >= neurons.size() || seen[neurons[i]])
      fail(ErrorCode::Config, "encoder neuron map is not a permutation");
    seen[neurons[i]] = true;
    encoder.slot_of_neuron_[neurons[i]] = encoder.first_slot_ + static_cast<std::int64_t>(i);
  }
  return encoder;
}

}  // namespace vspiker
