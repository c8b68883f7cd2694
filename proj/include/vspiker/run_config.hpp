#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vspiker/detector.hpp"
#include "vspiker/grid_search.hpp"
#include "vspiker/metrics.hpp"
#include "vspiker/network.hpp"
#include "vspiker/stdp.hpp"
#include "vspiker/timeseries.hpp"

namespace vspiker {

struct DataSettings {
  std::filesystem::path series;
  std::optional<std::filesystem::path> labels;
  /// Entry of the label file to use; may be empty when it holds one dataset.
  std::string dataset;
  CsvSchema schema;
  bool resample = false;
  std::size_t max_fill = 3;
  /// Leading share of the series used for training; detection runs on the rest.
  double train_fraction = 1.0;
};

struct EncoderSettings {
  std::optional<double> interval_fraction;
  std::optional<double> interval_length;
  std::optional<double> domain_min;
  std::optional<double> domain_max;
  std::optional<double> clamp_min;
  std::optional<double> clamp_max;
  std::size_t max_neurons = 100'000;
};

/// Everything a CLI run needs. Parsed from an INI file with one section per
/// pipeline stage: [run] [data] [encoder] [network] [stdp_forward]
/// [stdp_recurrent] [training] [detector] [evaluation] [grid].
struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  std::size_t workers = 1;

  DataSettings data;
  EncoderSettings encoder;
  NetworkConfig network;
  StdpParams forward_stdp{-0.1, -0.1};
  std::optional<StdpParams> recurrent_stdp;
  int epochs = 1;
  DetectorConfig detector;
  EvaluationOptions evaluation;
  std::size_t folds = 5;
  RankMetric rank_by = RankMetric::GMean;
  GridSpec grid;
};

/// Relative paths resolve against `base_dir`.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = ".");
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace vspiker
