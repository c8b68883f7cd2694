#include "vspiker/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "vspiker/error.hpp"
#include "vspiker/text.hpp"

namespace vspiker {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      cells.push_back(std::string(trim(cell)));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(std::string(trim(cell)));
  return cells;
}

std::optional<bool> parse_label_cell(const std::string& cell) {
  if (cell == "1" || cell == "true" || cell == "True" || cell == "TRUE") return true;
  if (cell == "0" || cell == "false" || cell == "False" || cell == "FALSE") return false;
  return std::nullopt;
}

// Relative tolerance for comparing spacings.
bool same_spacing(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, size());
  begin = std::min(begin, end);
  TimeSeries out;
  out.timestamp_format = timestamp_format;
  out.timestamps.assign(timestamps.begin() + begin, timestamps.begin() + end);
  out.values.assign(values.begin() + begin, values.begin() + end);
  if (labels) out.labels.emplace(labels->begin() + begin, labels->begin() + end);
  return out;
}

TimeSeries TimeSeries::select(const std::vector<std::size_t>& indices) const {
  TimeSeries out;
  out.timestamp_format = timestamp_format;
  out.timestamps.reserve(indices.size());
  out.values.reserve(indices.size());
  if (labels) out.labels.emplace();
  for (std::size_t i : indices) {
    out.timestamps.push_back(timestamps.at(i));
    out.values.push_back(values.at(i));
    if (labels) out.labels->push_back((*labels)[i]);
  }
  return out;
}

std::optional<double> parse_timestamp(const std::string& text, TimestampFormat* format) {
  const std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  if (auto number = parse_double(s)) {
    if (format) *format = TimestampFormat::EpochSeconds;
    return number;
  }

  int year = 0;
  unsigned month = 0, day = 0, hour = 0, minute = 0;
  double second = 0.0;
  char sep = 0;
  int consumed = 0;
  const std::string owned(s);
  const int fields = std::sscanf(owned.c_str(), "%4d-%2u-%2u%c%2u:%2u:%lf%n", &year, &month, &day,
                                 &sep, &hour, &minute, &second, &consumed);
  std::string_view rest;
  if (fields == 7) {
    if (sep != 'T' && sep != ' ') return std::nullopt;
    rest = s.substr(static_cast<std::size_t>(consumed));
  } else {
    // Date only.
    consumed = 0;
    if (std::sscanf(owned.c_str(), "%4d-%2u-%2u%n", &year, &month, &day, &consumed) != 3)
      return std::nullopt;
    rest = s.substr(static_cast<std::size_t>(consumed));
    hour = minute = 0;
    second = 0.0;
  }
  if (!(rest.empty() || rest == "Z" || rest == "+00:00")) return std::nullopt;

  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second < 0.0 || second >= 61.0) return std::nullopt;
  const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
  if (format) *format = TimestampFormat::Iso8601;
  return static_cast<double>(days_since_epoch) * 86400.0 + hour * 3600.0 + minute * 60.0 + second;
}

std::string format_timestamp(double seconds, TimestampFormat format) {
  if (format == TimestampFormat::EpochSeconds) return format_double(seconds);

  using namespace std::chrono;
  const double whole = std::floor(seconds);
  const auto total = static_cast<long long>(whole);
  const double fraction = seconds - whole;
  const sys_days day_point{days{total >= 0 ? total / 86400 : -((-total + 86399) / 86400)}};
  const long long in_day = total - static_cast<long long>(day_point.time_since_epoch().count()) * 86400;
  const year_month_day ymd{day_point};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02lld:%02lld:%02lld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), in_day / 3600,
                (in_day / 60) % 60, in_day % 60);
  std::string out(buf);
  if (fraction > 0.0) {
    std::snprintf(buf, sizeof buf, "%.6f", fraction);
    out += std::string(buf).substr(1);
  }
  return out;
}

TimeSeries parse_csv(const std::string& text, const CsvSchema& schema) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;

  std::optional<std::size_t> ts_col, value_col, label_col;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    const auto header = split_csv_line(line);
    width = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == schema.timestamp_column) ts_col = i;
      if (header[i] == schema.value_column) value_col = i;
      if (!schema.label_column.empty() && header[i] == schema.label_column) label_col = i;
    }
    break;
  }
  if (width == 0) fail(ErrorCode::EmptySeries, "no header row");
  if (!ts_col || !value_col)
    fail(ErrorCode::MalformedRow, "header lacks columns '" + schema.timestamp_column + "' and/or '" +
                                      schema.value_column + "'");

  struct Record {
    double t;
    double v;
    bool label;
  };
  std::vector<Record> records;
  TimestampFormat format = TimestampFormat::EpochSeconds;
  bool format_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    const auto where = "line " + std::to_string(line_number);
    if (cells.size() <= std::max({*ts_col, *value_col, label_col.value_or(0)}))
      fail(ErrorCode::MalformedRow, where + ": too few cells");
    TimestampFormat row_format{};
    const auto t = parse_timestamp(cells[*ts_col], &row_format);
    if (!t) fail(ErrorCode::MalformedRow, where + ": bad timestamp '" + cells[*ts_col] + "'");
    const auto v = parse_double(cells[*value_col]);
    if (!v || !std::isfinite(*v))
      fail(ErrorCode::MalformedRow, where + ": non-numeric value '" + cells[*value_col] + "'");
    bool label = false;
    if (label_col) {
      const auto parsed = parse_label_cell(cells[*label_col]);
      if (!parsed) fail(ErrorCode::MalformedRow, where + ": bad label '" + cells[*label_col] + "'");
      label = *parsed;
    }
    if (!format_seen) {
      format = row_format;
      format_seen = true;
    }
    records.push_back({*t, *v, label});
  }
  if (records.empty() && !schema.allow_empty) fail(ErrorCode::EmptySeries, "no data rows");

  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].t == records[i - 1].t)
      fail(ErrorCode::DuplicateTimestamp,
           "timestamp " + format_timestamp(records[i].t, format) + " appears twice");

  TimeSeries series;
  series.timestamp_format = format;
  if (label_col) series.labels.emplace();
  for (const auto& r : records) {
    series.timestamps.push_back(r.t);
    series.values.push_back(r.v);
    if (label_col) series.labels->push_back(r.label);
  }
  return series;
}

TimeSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  return parse_csv(read_file(path), schema);
}

std::string format_csv(const TimeSeries& series) {
  std::string out = series.has_labels() ? "timestamp,value,label\n" : "timestamp,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += format_timestamp(series.timestamps[i], series.timestamp_format);
    out += ',';
    out += format_double(series.values[i]);
    if (series.has_labels()) out += (*series.labels)[i] ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const TimeSeries& series) {
  write_file(path, format_csv(series));
}

std::vector<LabelWindow> merge_windows(std::vector<LabelWindow> windows) {
  for (const auto& w : windows)
    if (w.end < w.start) fail(ErrorCode::MalformedWindow, "window ends before it starts");
  std::sort(windows.begin(), windows.end(),
            [](const LabelWindow& a, const LabelWindow& b) { return a.start < b.start; });
  std::vector<LabelWindow> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.start <= merged.back().end)
      merged.back().end = std::max(merged.back().end, w.end);
    else
      merged.push_back(w);
  }
  return merged;
}

std::vector<LabelWindow> parse_label_windows(const std::string& json_text, const std::string& dataset) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedWindow, std::string("label file is not JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::MalformedWindow, "label file must be a JSON object");

  const nlohmann::json* entry = nullptr;
  if (dataset.empty()) {
    if (doc.size() != 1)
      fail(ErrorCode::MalformedWindow, "label file has " + std::to_string(doc.size()) +
                                           " datasets; name the one to use");
    entry = &doc.begin().value();
  } else {
    // NAB keys are relative paths such as "realKnownCause/machine_temperature.csv";
    // accept an exact key or a key ending in "/<dataset>".
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& key = it.key();
      if (key == dataset || (key.size() > dataset.size() &&
                             key.compare(key.size() - dataset.size(), dataset.size(), dataset) == 0 &&
                             key[key.size() - dataset.size() - 1] == '/')) {
        entry = &it.value();
        break;
      }
    }
    if (!entry) fail(ErrorCode::MalformedWindow, "dataset '" + dataset + "' not in label file");
  }
  if (!entry->is_array()) fail(ErrorCode::MalformedWindow, "windows must be a list");

  auto instant = [](const nlohmann::json& j) -> double {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
      if (auto t = parse_timestamp(j.get<std::string>())) return *t;
    }
    fail(ErrorCode::MalformedWindow, "bad window endpoint " + j.dump());
  };

  std::vector<LabelWindow> windows;
  for (const auto& pair : *entry) {
    if (!pair.is_array() || pair.size() != 2)
      fail(ErrorCode::MalformedWindow, "window must be a [start, end] pair: " + pair.dump());
    windows.push_back({instant(pair[0]), instant(pair[1])});
  }
  return merge_windows(std::move(windows));
}

std::vector<LabelWindow> load_label_windows(const std::filesystem::path& path,
                                            const std::string& dataset) {
  return parse_label_windows(read_file(path), dataset);
}

void apply_label_windows(TimeSeries& series, const std::vector<LabelWindow>& windows) {
  const auto merged = merge_windows(windows);
  std::vector<bool> labels(series.size(), false);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.timestamps[i];
    auto it = std::upper_bound(merged.begin(), merged.end(), t,
                               [](double x, const LabelWindow& w) { return x < w.start; });
    if (it != merged.begin() && t <= std::prev(it)->end) labels[i] = true;
  }
  series.labels = std::move(labels);
}

bool is_uniform(const TimeSeries& series) {
  if (series.size() < 3) return true;
  const double spacing = series.timestamps[1] - series.timestamps[0];
  for (std::size_t i = 2; i < series.size(); ++i)
    if (!same_spacing(series.timestamps[i] - series.timestamps[i - 1], spacing)) return false;
  return true;
}

namespace {

double modal_spacing(const TimeSeries& series, double min_share) {
  std::vector<double> diffs(series.size() - 1);
  for (std::size_t i = 1; i < series.size(); ++i)
    diffs[i - 1] = series.timestamps[i] - series.timestamps[i - 1];
  std::vector<double> sorted = diffs;
  std::sort(sorted.begin(), sorted.end());

  double best = sorted.front();
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && same_spacing(sorted[j], sorted[i])) ++j;
    // Smallest spacing wins ties.
    if (j - i > best_count) {
      best_count = j - i;
      best = sorted[i];
    }
    i = j;
  }
  if (static_cast<double>(best_count) < min_share * static_cast<double>(diffs.size()))
    fail(ErrorCode::IrreconcilableGrid, "no spacing covers " +
                                            std::to_string(static_cast<int>(min_share * 100)) +
                                            "% of intervals");
  return best;
}

struct GridPoint {
  long long slot;
  double value;
  bool label;
};

std::vector<GridPoint> snap(const TimeSeries& series, double spacing) {
  const double origin = series.timestamps.front();
  std::vector<GridPoint> points;
  points.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto slot = std::llround((series.timestamps[i] - origin) / spacing);
    // First observation claims a grid point.
    if (!points.empty() && points.back().slot == slot) continue;
    points.push_back({slot, series.values[i], series.is_anomalous(i)});
  }
  return points;
}

}  // namespace

std::vector<TimeSeries> resample_segments(const TimeSeries& series, const ResampleOptions& options) {
  if (series.size() < 2) fail(ErrorCode::SeriesTooShort, "resampling needs at least 2 records");
  if (is_uniform(series)) return {series};

  const double spacing = modal_spacing(series, options.min_modal_share);
  const double origin = series.timestamps.front();
  const auto points = snap(series, spacing);

  std::vector<TimeSeries> segments;
  auto start_segment = [&] {
    TimeSeries s;
    s.timestamp_format = series.timestamp_format;
    if (series.has_labels()) s.labels.emplace();
    segments.push_back(std::move(s));
  };
  auto push = [&](long long slot, double value, bool label) {
    auto& s = segments.back();
    s.timestamps.push_back(origin + static_cast<double>(slot) * spacing);
    s.values.push_back(value);
    if (s.labels) s.labels->push_back(label);
  };

  start_segment();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) {
      const auto missing = static_cast<std::size_t>(points[i].slot - points[i - 1].slot - 1);
      if (missing > options.max_fill) {
        start_segment();
      } else {
        for (std::size_t m = 1; m <= missing; ++m)
          push(points[i - 1].slot + static_cast<long long>(m), points[i - 1].value, points[i - 1].label);
      }
    }
    push(points[i].slot, points[i].value, points[i].label);
  }
  return segments;
}

TimeSeries resample_uniform(const TimeSeries& series, const ResampleOptions& options) {
  auto segments = resample_segments(series, options);
  if (segments.size() > 1)
    fail(ErrorCode::GapTooLarge, "gap longer than " + std::to_string(options.max_fill) +
                                     " grid steps; resample into segments instead");
  return std::move(segments.front());
}

std::vector<FoldSplit> expanding_folds(const TimeSeries& series, std::size_t k) {
  const std::size_t n = series.size();
  if (k < 2) fail(ErrorCode::InvalidArgument, "fold count must be at least 2");
  if (n < k + 1)
    fail(ErrorCode::SeriesTooShort,
         std::to_string(n) + " records cannot form " + std::to_string(k) + " expanding folds");
  const std::size_t block = n / (k + 1);
  std::vector<FoldSplit> folds;
  for (std::size_t i = 0; i < k; ++i) {
    FoldSplit f;
    f.fold_index = i;
    f.train_range = {0, (i + 1) * block};
    f.test_range = {(i + 1) * block, i + 1 == k ? n : (i + 2) * block};
    for (std::size_t j = f.train_range.begin; j < f.train_range.end; ++j)
      if (!series.is_anomalous(j)) f.train_indices.push_back(j);
    folds.push_back(std::move(f));
  }
  return folds;
}

TimeSeries training_view(const TimeSeries& series, const FoldSplit& fold) {
  return series.select(fold.train_indices);
}

TimeSeries test_view(const TimeSeries& series, const FoldSplit& fold) {
  return series.slice(fold.test_range.begin, fold.test_range.end);
}

}  // namespace vspiker
