#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace vspiker {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  // Rates with an empty denominator are 0.
  double tpr() const noexcept;
  double fpr() const noexcept;
  double tnr() const noexcept;
  double precision() const noexcept;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const std::vector<bool>& alerts, const std::vector<bool>& labels);

double g_mean(const ConfusionCounts& c);
/// 0 when there are no true positives or no positive predictions.
double f1(const ConfusionCounts& c);

/// Exact ROC area over every distinct score (alert when score >= cut),
/// integrated with the trapezoidal rule. Tied scores count 1/2.
double auc(std::span<const double> scores, const std::vector<bool>& labels);

/// ROC cut maximizing TPR - FPR, where records with score >= cut alert.
/// Ties go to the larger cut.
double youden_threshold(std::span<const double> scores, const std::vector<bool>& labels);

struct EvaluationOptions {
  /// Moving-average windows to try; 0 means unsmoothed.
  std::vector<std::size_t> smoothing_windows{0, 100, 200, 300};
  std::size_t threshold_count = 10;
};

struct MetricSelection {
  double value = 0.0;
  double threshold = 0.0;
  std::size_t smoothing = 0;
};

struct MetricsReport {
  MetricSelection g_mean;
  MetricSelection f1;
  /// Absent when the labels hold a single class.
  std::optional<MetricSelection> auc;
  std::optional<double> youden_threshold;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// Best G-Mean and best F1 over every (smoothing, grid threshold) pair,
/// chosen independently, plus the best AUC over the smoothing options and
/// the Youden cut on that signal. Earlier options win ties.
MetricsReport evaluate_run(std::span<const double> signal, const std::vector<bool>& labels,
                           const EvaluationOptions& options = {});

}  // namespace vspiker
