#include "vspiker/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "vspiker/detector.hpp"
#include "vspiker/error.hpp"

namespace vspiker {

namespace {
double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b)
    fail(ErrorCode::LengthMismatch, "lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

struct Classes {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

Classes count_classes(const std::vector<bool>& labels) {
  Classes c;
  for (bool l : labels) (l ? c.positives : c.negatives)++;
  if (c.positives == 0 || c.negatives == 0)
    fail(ErrorCode::SingleClass, "labels need at least one positive and one negative");
  return c;
}

// Indices sorted by descending score.
std::vector<std::size_t> descending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}
}  // namespace

double ConfusionCounts::tpr() const noexcept { return ratio(tp, tp + fn); }
double ConfusionCounts::fpr() const noexcept { return ratio(fp, tn + fp); }
double ConfusionCounts::tnr() const noexcept { return ratio(tn, tn + fp); }
double ConfusionCounts::precision() const noexcept { return ratio(tp, tp + fp); }

ConfusionCounts confusion(const std::vector<bool>& alerts, const std::vector<bool>& labels) {
  require_same_length(alerts.size(), labels.size());
  ConfusionCounts c;
  for (std::size_t i = 0; i < alerts.size(); ++i) {
    if (labels[i])
      (alerts[i] ? c.tp : c.fn)++;
    else
      (alerts[i] ? c.fp : c.tn)++;
  }
  return c;
}

double g_mean(const ConfusionCounts& c) { return std::sqrt(c.tpr() * c.tnr()); }

double f1(const ConfusionCounts& c) {
  if (c.tp == 0 || c.tp + c.fp == 0) return 0.0;
  const double p = c.precision();
  const double r = c.tpr();
  return 2.0 * p * r / (p + r);
}

double auc(std::span<const double> scores, const std::vector<bool>& labels) {
  require_same_length(scores.size(), labels.size());
  const auto classes = count_classes(labels);
  const auto order = descending_order(scores);

  // Twice the area in units of (1 / P) x (1 / N).
  std::uint64_t twice_area = 0;
  std::uint64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::uint64_t group_tp = 0, group_fp = 0;
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? group_tp : group_fp)++;
      ++j;
    }
    twice_area += group_fp * (2 * tp + group_tp);
    tp += group_tp;
    fp += group_fp;
    i = j;
  }
  return static_cast<double>(twice_area) /
         (2.0 * static_cast<double>(classes.positives) * static_cast<double>(classes.negatives));
}

double youden_threshold(std::span<const double> scores, const std::vector<bool>& labels) {
  require_same_length(scores.size(), labels.size());
  const auto classes = count_classes(labels);
  const auto order = descending_order(scores);
  const auto p = static_cast<std::int64_t>(classes.positives);
  const auto n = static_cast<std::int64_t>(classes.negatives);

  std::int64_t tp = 0, fp = 0;
  // J scaled by P * N so comparisons stay in integers.
  std::int64_t best_j = 0;
  double best_cut = scores[order.front()];
  bool have_best = false;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? tp : fp)++;
      ++j;
    }
    const std::int64_t scaled = tp * n - fp * p;
    if (!have_best || scaled > best_j) {
      best_j = scaled;
      best_cut = scores[order[i]];
      have_best = true;
    }
    i = j;
  }
  return best_cut;
}

nlohmann::json MetricsReport::to_json() const {
  auto selection = [](const MetricSelection& s) {
    return nlohmann::json{{"value", s.value}, {"threshold", s.threshold}, {"smoothing", s.smoothing}};
  };
  nlohmann::json j;
  j["g_mean"] = selection(g_mean);
  j["f1"] = selection(f1);
  if (auc)
    j["auc"] = {{"value", auc->value}, {"smoothing", auc->smoothing}};
  else
    j["auc"] = nullptr;
  j["youden_threshold"] = youden_threshold ? nlohmann::json(*youden_threshold) : nlohmann::json(nullptr);
  j["warnings"] = warnings;
  return j;
}

MetricsReport evaluate_run(std::span<const double> signal, const std::vector<bool>& labels,
                           const EvaluationOptions& options) {
  require_same_length(signal.size(), labels.size());
  if (signal.empty()) fail(ErrorCode::EmptySignal, "nothing to evaluate");
  if (options.smoothing_windows.empty()) fail(ErrorCode::InvalidArgument, "no smoothing options");

  const bool both_classes = std::find(labels.begin(), labels.end(), true) != labels.end() &&
                            std::find(labels.begin(), labels.end(), false) != labels.end();
  MetricsReport report;
  if (!both_classes) report.warnings.push_back("labels hold a single class; AUC omitted");

  bool first = true;
  std::vector<double> auc_signal;
  for (std::size_t window : options.smoothing_windows) {
    std::vector<double> s = window == 0 ? std::vector<double>(signal.begin(), signal.end()) : smooth(signal, window);
    for (double theta : threshold_grid(s, options.threshold_count)) {
      const auto c = confusion(apply_threshold(s, theta), labels);
      const double gm = g_mean(c);
      const double f = f1(c);
      if (first || gm > report.g_mean.value) report.g_mean = {gm, theta, window};
      if (first || f > report.f1.value) report.f1 = {f, theta, window};
      first = false;
    }
    if (both_classes) {
      const double a = auc(s, labels);
      if (!report.auc || a > report.auc->value) {
        report.auc = MetricSelection{a, 0.0, window};
        auc_signal = std::move(s);
      }
    }
  }
  if (report.auc) report.youden_threshold = youden_threshold(auc_signal, labels);
  return report;
}

}  // namespace vspiker
