#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vspiker/metrics.hpp"
#include "vspiker/network.hpp"
#include "vspiker/stdp.hpp"
#include "vspiker/timeseries.hpp"

namespace vspiker {

/// Value sets swept by the grid search. Defaults span the published sweep.
struct GridSpec {
  std::vector<double> forward_a_minus{-0.1, 0.1};
  std::vector<double> forward_a_plus{-0.1, 0.1};
  std::vector<double> recurrent_a_minus{-0.1, 0.1};
  std::vector<double> recurrent_a_plus{-0.1, 0.1};
  std::vector<bool> recurrence{false, true};
  std::vector<std::size_t> neurons{100, 2000};
  std::vector<double> thresholds{-62.0, -55.0, -40.0};
  std::vector<double> leaks{leak_for_time_constant(100.0), leak_for_time_constant(150.0),
                            leak_for_time_constant(200.0)};
  /// Interval length as a fraction of the training domain width.
  std::vector<double> interval_fractions{0.001, 0.1};
  std::vector<int> epochs{1, 2, 3, 4, 5};

  // Held fixed across the sweep.
  LifParams base_lif;
  double tau_plus = 1.051;
  double tau_minus = 1.051;
  double forward_init_mean = 0.05;
  double forward_init_std = 0.1;
  std::size_t max_input_neurons = 100'000;

  void validate() const;
};

struct GridConfiguration {
  std::size_t id = 0;
  bool recurrent = false;
  StdpParams forward;
  std::optional<StdpParams> recurrent_stdp;
  std::size_t neurons = 0;
  double threshold = 0.0;
  double leak = 0.0;
  double interval_fraction = 0.0;
  int epochs = 1;
};

/// Cartesian product of the value sets; recurrent amplitudes only multiply
/// configurations that have a recurrent connection. Ids follow expansion order.
std::vector<GridConfiguration> expand_grid(const GridSpec& grid);

struct FoldOutcome {
  MetricsReport report;
  double mean_macs = 0.0;
};

/// Trains a fresh network on the fold's training view (domain = its value
/// range, default clamp bound) and evaluates its spike counts on the test block.
FoldOutcome evaluate_fold(const TimeSeries& series, const FoldSplit& fold, const GridConfiguration& config,
                          const GridSpec& grid, std::uint64_t seed, const EvaluationOptions& evaluation);

enum class RankMetric { GMean, F1, Auc };

struct GridRow {
  GridConfiguration config;
  std::vector<FoldOutcome> folds;
  double mean_g_mean = 0.0;
  double mean_f1 = 0.0;
  /// Mean over folds whose test block holds both classes.
  std::optional<double> mean_auc;
  double mean_macs = 0.0;
  std::size_t rank_g_mean = 0;
  std::size_t rank_f1 = 0;
  std::size_t rank_auc = 0;

  double metric(RankMetric m) const;
  std::size_t rank(RankMetric m) const;
};

struct GridSearchOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  EvaluationOptions evaluation;
  RankMetric order_by = RankMetric::GMean;
};

struct GridResult {
  /// Sorted by rank under the ordering metric.
  std::vector<GridRow> rows;
  RankMetric order_by = RankMetric::GMean;
};

GridResult grid_search(const TimeSeries& series, const GridSpec& grid, const GridSearchOptions& options);

/// Fills per-metric ranks (1 = best: higher metric, then fewer MACs, then
/// lower id; a missing AUC ranks last) and sorts rows by `order_by`.
GridResult rank_rows(std::vector<GridRow> rows, RankMetric order_by);

std::string format_grid_csv(const GridResult& result);

std::string to_string(RankMetric m);
std::optional<RankMetric> parse_rank_metric(const std::string& name);

}  // namespace vspiker
