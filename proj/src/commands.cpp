#include "vspiker/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "vspiker/checkpoint.hpp"
#include "vspiker/detector.hpp"
#include "vspiker/energy.hpp"
#include "vspiker/grid_search.hpp"
#include "vspiker/metrics.hpp"
#include "vspiker/stdp.hpp"
#include "vspiker/text.hpp"

namespace vspiker {

namespace {

using nlohmann::json;

constexpr double kDefaultIntervalFraction = 0.1;

std::uint64_t require_seed(const RunConfig& config) {
  if (!config.seed) fail(ErrorCode::Config, "a seed is required ([run] seed or --seed)");
  return *config.seed;
}

std::size_t training_prefix(const RunConfig& config, std::size_t n) {
  if (config.data.train_fraction >= 1.0) return n;
  return static_cast<std::size_t>(std::floor(config.data.train_fraction * static_cast<double>(n)));
}

TimeSeries detection_series(const RunConfig& config, const TimeSeries& series) {
  const auto cut = training_prefix(config, series.size());
  return cut >= series.size() ? series : series.slice(cut, series.size());
}

json weight_stats(const WeightMatrix& w) {
  const auto& d = w.data();
  if (d.empty()) return {{"rows", w.rows()}, {"cols", w.cols()}};
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  long double sum = 0.0L;
  for (double x : d) sum += x;
  return {{"rows", w.rows()},
          {"cols", w.cols()},
          {"min", *lo},
          {"max", *hi},
          {"mean", static_cast<double>(sum / static_cast<long double>(d.size()))}};
}

json stdp_json(const StdpParams& p) {
  return {{"a_minus", p.a_minus}, {"a_plus", p.a_plus}, {"tau_plus", p.tau_plus}, {"tau_minus", p.tau_minus}};
}

IntervalEncoder make_encoder(const RunConfig& config, const TimeSeries& train_series) {
  const auto& e = config.encoder;
  double lo = 0.0, hi = 0.0;
  if (!train_series.empty()) {
    const auto [mn, mx] = std::minmax_element(train_series.values.begin(), train_series.values.end());
    lo = *mn;
    hi = *mx;
  }
  if (e.domain_min) lo = *e.domain_min;
  if (e.domain_max) hi = *e.domain_max;
  const Interval domain{lo, hi};
  std::optional<Interval> clamp;
  if (e.clamp_min) clamp = Interval{*e.clamp_min, *e.clamp_max};
  if (e.interval_length) return IntervalEncoder::with_length(domain, *e.interval_length, clamp, e.max_neurons);
  return IntervalEncoder::create(domain, e.interval_fraction.value_or(kDefaultIntervalFraction), clamp,
                                 e.max_neurons);
}

SpikeSignal run_detection(Network& net, const TimeSeries& series) {
  // Raw-count alerts are recomputed after smoothing, so the network itself never alerts here.
  return net.run_series(series, std::numeric_limits<double>::infinity());
}

std::vector<bool> labels_for(const RunConfig& config, const std::vector<double>& timestamps) {
  if (config.data.labels) {
    TimeSeries tmp;
    tmp.timestamps = timestamps;
    tmp.values.assign(timestamps.size(), 0.0);
    apply_label_windows(tmp, load_label_windows(*config.data.labels, config.data.dataset));
    return *tmp.labels;
  }
  const auto series = load_run_series(config);
  if (!series.labels) fail(ErrorCode::Config, "evaluation needs labels: set [data] labels or a label column");
  // Align by timestamp; the detection may cover only a suffix of the series.
  std::vector<bool> out;
  out.reserve(timestamps.size());
  std::size_t j = 0;
  for (double t : timestamps) {
    while (j < series.size() && series.timestamps[j] < t) ++j;
    if (j == series.size() || series.timestamps[j] != t)
      fail(ErrorCode::LengthMismatch, "detection timestamp " + format_double(t) + " not found in the labelled series");
    out.push_back((*series.labels)[j]);
  }
  return out;
}

}  // namespace

TimeSeries load_run_series(const RunConfig& config) {
  auto schema = config.data.schema;
  schema.allow_empty = true;
  auto series = load_csv(config.data.series, schema);
  if (config.data.resample && series.size() > 1) {
    ResampleOptions options;
    options.max_fill = config.data.max_fill;
    series = resample_uniform(series, options);
  }
  if (config.data.labels)
    apply_label_windows(series, load_label_windows(*config.data.labels, config.data.dataset));
  return series;
}

json cmd_train(const RunConfig& config) {
  const auto seed = require_seed(config);
  const auto series = load_run_series(config);
  const auto prefix = series.slice(0, training_prefix(config, series.size()));
  std::vector<std::size_t> normal;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!prefix.is_anomalous(i)) normal.push_back(i);
  const auto train_series = prefix.select(normal);
  if (train_series.empty()) fail(ErrorCode::EmptySeries, "no normal records to train on");

  auto net_config = config.network;
  net_config.seed = seed;
  auto net = Network::build(net_config, make_encoder(config, train_series));

  TrainingOptions options;
  options.forward = config.forward_stdp;
  if (net_config.recurrent) {
    if (!config.recurrent_stdp) fail(ErrorCode::MissingRecurrentParams, "recurrent network needs [stdp_recurrent]");
    options.recurrent = config.recurrent_stdp;
  }
  options.epochs = config.epochs;
  const auto result = train(net, train_series, options);

  json behaviour{{"forward", to_string(classify_behaviour(ConnectionKind::Forward, options.forward.a_minus,
                                                          options.forward.a_plus))}};
  json weights{{"forward", weight_stats(net.forward_weights())}};
  json stdp{{"forward", stdp_json(options.forward)}};
  if (options.recurrent) {
    behaviour["recurrent"] = to_string(
        classify_behaviour(ConnectionKind::Recurrent, options.recurrent->a_minus, options.recurrent->a_plus));
    weights["recurrent"] = weight_stats(*net.recurrent_weights());
    stdp["recurrent"] = stdp_json(*options.recurrent);
  }
  json summary{{"seed", seed},
               {"records_trained", train_series.size()},
               {"anomalies_dropped", prefix.size() - train_series.size()},
               {"epochs", config.epochs},
               {"spikes_per_epoch", result.spikes_per_epoch},
               {"input_neurons", net.input_count()},
               {"neurons", net.neurons()},
               {"recurrent", net.recurrent()},
               {"behaviour", behaviour},
               {"stdp", stdp},
               {"weights", weights}};

  save_checkpoint(config.out_dir / "checkpoint.json", net, {{"training", summary}});
  write_file(config.out_dir / "training_summary.json", summary.dump(2) + "\n");
  return summary;
}

json cmd_detect(const RunConfig& config, const std::filesystem::path& checkpoint) {
  auto net = load_checkpoint(checkpoint);
  const auto series = detection_series(config, load_run_series(config));
  const auto signal = run_detection(net, series);
  const auto detection = detect(signal, config.detector);
  write_file(config.out_dir / "detection.csv", format_detection_csv(detection, series.timestamp_format));

  json report{{"neurons", net.neurons()}, {"recurrent", net.recurrent()}, {"steps", signal.size()}};
  if (signal.empty()) {
    report["mean"] = nullptr;
    report["total"] = 0;
  } else {
    const auto macs = vacuum_macs_for_run(signal.counts, net.neurons(), net.recurrent());
    report["mean"] = macs.mean;
    report["total"] = macs.total;
  }
  write_file(config.out_dir / "macs.json", report.dump(2) + "\n");
  return report;
}

json cmd_evaluate(const RunConfig& config, const std::optional<std::filesystem::path>& detection,
                  const std::optional<std::filesystem::path>& checkpoint) {
  SpikeSignal signal;
  if (detection) {
    signal = parse_detection_csv(read_file(*detection));
  } else if (checkpoint) {
    auto net = load_checkpoint(*checkpoint);
    signal = run_detection(net, detection_series(config, load_run_series(config)));
  } else {
    fail(ErrorCode::Config, "evaluate needs --detection or --checkpoint");
  }
  if (signal.empty()) fail(ErrorCode::EmptySignal, "nothing to evaluate");
  const auto labels = labels_for(config, signal.timestamps);

  auto report = evaluate_run(signal.as_doubles(), labels, config.evaluation);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  const auto out = report.to_json();
  write_file(config.out_dir / "metrics.json", out.dump(2) + "\n");
  return out;
}

std::string cmd_grid_search(const RunConfig& config) {
  GridSearchOptions options;
  options.seed = require_seed(config);
  options.folds = config.folds;
  options.workers = config.workers;
  options.evaluation = config.evaluation;
  options.order_by = config.rank_by;
  const auto series = load_run_series(config);
  const auto csv = format_grid_csv(grid_search(series, config.grid, options));
  write_file(config.out_dir / "ranking.csv", csv);
  return csv;
}

json cmd_energy(const std::filesystem::path& spec, const std::filesystem::path& out_dir,
                std::optional<double> joules_per_mac) {
  json doc;
  try {
    doc = json::parse(read_file(spec));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Config, "architecture spec is not valid JSON: " + std::string(e.what()));
  }
  const auto layers = architecture_from_json(doc);
  if (layers.empty()) fail(ErrorCode::Config, "architecture spec has no layers");
  json per_layer = json::array();
  for (const auto& layer : layers) per_layer.push_back({{"layer", layer_name(layer)}, {"macs", baseline_macs(layer)}});
  const auto total = model_macs(layers);
  json report{{"layers", per_layer}, {"total_macs", total}};
  if (joules_per_mac) {
    report["joules_per_mac"] = *joules_per_mac;
    report["total_joules"] = static_cast<double>(total) * *joules_per_mac;
  }
  write_file(out_dir / "energy.json", report.dump(2) + "\n");
  return report;
}

int exit_code(ErrorCode code) {
  switch (category(code)) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Data: return 3;
    case ErrorCategory::Runtime: return 4;
  }
  return 4;
}

}  // namespace vspiker
