#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vspiker {

enum class TimestampFormat { EpochSeconds, Iso8601 };

/// Timestamped univariate series. Timestamps are seconds since the Unix
/// epoch; labels, when present, flag records inside ground-truth anomaly
/// windows.
struct TimeSeries {
  std::vector<double> timestamps;
  std::vector<double> values;
  std::optional<std::vector<bool>> labels;
  TimestampFormat timestamp_format = TimestampFormat::EpochSeconds;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  bool has_labels() const noexcept { return labels.has_value(); }
  bool is_anomalous(std::size_t i) const { return labels && (*labels)[i]; }

  /// Records [begin, end) as a new series.
  TimeSeries slice(std::size_t begin, std::size_t end) const;
  /// Records at the given indices, in the given order.
  TimeSeries select(const std::vector<std::size_t>& indices) const;
};

struct CsvSchema {
  std::string timestamp_column = "timestamp";
  std::string value_column = "value";
  /// Optional 0/1 label column; ignored when absent from the header.
  std::string label_column = "label";
  /// Accept a header-only file as an empty series.
  bool allow_empty = false;
};

TimeSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
TimeSeries parse_csv(const std::string& text, const CsvSchema& schema = {});

/// Writes `timestamp,value,label` (label column only when labels exist).
/// Numbers use the shortest round-trip representation.
void write_csv(const std::filesystem::path& path, const TimeSeries& series);
std::string format_csv(const TimeSeries& series);

/// Parses epoch seconds or ISO-8601 (`YYYY-MM-DD[T ]HH:MM:SS[.fff][Z]`, UTC).
std::optional<double> parse_timestamp(const std::string& text, TimestampFormat* format = nullptr);
std::string format_timestamp(double seconds, TimestampFormat format);

struct LabelWindow {
  double start = 0.0;
  double end = 0.0;
};

/// Reads a Numenta-style label file (dataset name -> list of [start, end]).
/// With an empty `dataset` the file must contain exactly one entry.
/// Returned windows are sorted and merged.
std::vector<LabelWindow> load_label_windows(const std::filesystem::path& path,
                                            const std::string& dataset = {});
std::vector<LabelWindow> parse_label_windows(const std::string& json_text,
                                             const std::string& dataset = {});

std::vector<LabelWindow> merge_windows(std::vector<LabelWindow> windows);

/// labels[i] = timestamps[i] lies in some window, endpoints inclusive.
void apply_label_windows(TimeSeries& series, const std::vector<LabelWindow>& windows);

struct ResampleOptions {
  /// Longest run of missing grid points filled by carrying the last value forward.
  std::size_t max_fill = 3;
  /// Minimum share of intervals that must equal the modal spacing.
  double min_modal_share = 0.5;
};

/// Regularizes a series onto the grid given by its modal spacing.
TimeSeries resample_uniform(const TimeSeries& series, const ResampleOptions& options = {});

/// Like resample_uniform, but splits into uniform segments at gaps longer
/// than `max_fill` instead of failing.
std::vector<TimeSeries> resample_segments(const TimeSeries& series,
                                          const ResampleOptions& options = {});

bool is_uniform(const TimeSeries& series);

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
};

struct FoldSplit {
  std::size_t fold_index = 0;
  IndexRange train_range;
  IndexRange test_range;
  /// Indices of train_range left after dropping labelled anomalies.
  std::vector<std::size_t> train_indices;
};

/// Expanding-window folds: [0, N) is cut into k+1 equal blocks (remainder in
/// the last one); fold i trains on blocks 0..i and tests on block i+1.
std::vector<FoldSplit> expanding_folds(const TimeSeries& series, std::size_t k);

TimeSeries training_view(const TimeSeries& series, const FoldSplit& fold);
TimeSeries test_view(const TimeSeries& series, const FoldSplit& fold);

}  // namespace vspiker
