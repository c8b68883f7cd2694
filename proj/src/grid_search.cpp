#include "vspiker/grid_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "vspiker/energy.hpp"
#include "vspiker/error.hpp"
#include "vspiker/text.hpp"

namespace vspiker {

namespace {

template <class T>
void require_nonempty(const std::vector<T>& v, const char* name) {
  if (v.empty()) fail(ErrorCode::Config, std::string("grid dimension '") + name + "' is empty");
}

}  // namespace

void GridSpec::validate() const {
  require_nonempty(forward_a_minus, "forward_a_minus");
  require_nonempty(forward_a_plus, "forward_a_plus");
  require_nonempty(recurrence, "recurrence");
  require_nonempty(neurons, "neurons");
  require_nonempty(thresholds, "thresholds");
  require_nonempty(leaks, "leaks");
  require_nonempty(interval_fractions, "interval_fractions");
  require_nonempty(epochs, "epochs");
  if (std::find(recurrence.begin(), recurrence.end(), true) != recurrence.end()) {
    require_nonempty(recurrent_a_minus, "recurrent_a_minus");
    require_nonempty(recurrent_a_plus, "recurrent_a_plus");
  }
}

std::vector<GridConfiguration> expand_grid(const GridSpec& grid) {
  grid.validate();
  std::vector<GridConfiguration> out;
  for (bool recurrent : grid.recurrence)
    for (double fm : grid.forward_a_minus)
      for (double fp : grid.forward_a_plus) {
        std::vector<std::optional<StdpParams>> rec_options;
        if (recurrent) {
          for (double rm : grid.recurrent_a_minus)
            for (double rp : grid.recurrent_a_plus) rec_options.push_back(StdpParams{rp, rm, grid.tau_plus, grid.tau_minus});
        } else {
          rec_options.push_back(std::nullopt);
        }
        for (const auto& rec : rec_options)
          for (std::size_t n : grid.neurons)
            for (double th : grid.thresholds)
              for (double leak : grid.leaks)
                for (double frac : grid.interval_fractions)
                  for (int ep : grid.epochs) {
                    GridConfiguration c;
                    c.id = out.size();
                    c.recurrent = recurrent;
                    c.forward = StdpParams{fp, fm, grid.tau_plus, grid.tau_minus};
                    c.recurrent_stdp = rec;
                    c.neurons = n;
                    c.threshold = th;
                    c.leak = leak;
                    c.interval_fraction = frac;
                    c.epochs = ep;
                    out.push_back(c);
                  }
      }
  return out;
}

FoldOutcome evaluate_fold(const TimeSeries& series, const FoldSplit& fold, const GridConfiguration& config,
                          const GridSpec& grid, std::uint64_t seed, const EvaluationOptions& evaluation) {
  const auto train_series = training_view(series, fold);
  if (train_series.empty()) fail(ErrorCode::SeriesTooShort, "fold " + std::to_string(fold.fold_index) + " has no normal training data");
  const auto [lo, hi] = std::minmax_element(train_series.values.begin(), train_series.values.end());

  NetworkConfig net_config;
  net_config.neurons = config.neurons;
  net_config.recurrent = config.recurrent;
  net_config.forward_init_mean = grid.forward_init_mean;
  net_config.forward_init_std = grid.forward_init_std;
  net_config.lif = grid.base_lif;
  net_config.lif.threshold = config.threshold;
  net_config.lif.leak = config.leak;
  net_config.seed = seed;

  auto encoder = IntervalEncoder::create({*lo, *hi}, config.interval_fraction, std::nullopt, grid.max_input_neurons);
  auto net = Network::build(net_config, std::move(encoder));

  TrainingOptions training;
  training.forward = config.forward;
  training.recurrent = config.recurrent_stdp;
  training.epochs = config.epochs;
  train(net, train_series, training);

  const auto test_series = test_view(series, fold);
  const auto signal = net.run_series(test_series, std::numeric_limits<double>::infinity());
  const std::vector<bool> labels =
      test_series.labels ? *test_series.labels : std::vector<bool>(test_series.size(), false);

  FoldOutcome outcome;
  outcome.report = evaluate_run(signal.as_doubles(), labels, evaluation);
  outcome.mean_macs = vacuum_macs_for_run(signal.counts, config.neurons, config.recurrent).mean;
  return outcome;
}

double GridRow::metric(RankMetric m) const {
  switch (m) {
    case RankMetric::GMean: return mean_g_mean;
    case RankMetric::F1: return mean_f1;
    case RankMetric::Auc: return mean_auc.value_or(-std::numeric_limits<double>::infinity());
  }
  return 0.0;
}

std::size_t GridRow::rank(RankMetric m) const {
  switch (m) {
    case RankMetric::GMean: return rank_g_mean;
    case RankMetric::F1: return rank_f1;
    case RankMetric::Auc: return rank_auc;
  }
  return 0;
}

GridResult rank_rows(std::vector<GridRow> rows, RankMetric order_by) {
  auto better = [](RankMetric m) {
    return [m](const GridRow& a, const GridRow& b) {
      const double ma = a.metric(m), mb = b.metric(m);
      if (ma != mb) return ma > mb;
      if (a.mean_macs != b.mean_macs) return a.mean_macs < b.mean_macs;
      return a.config.id < b.config.id;
    };
  };
  for (RankMetric m : {RankMetric::GMean, RankMetric::F1, RankMetric::Auc}) {
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto cmp = better(m);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cmp(rows[a], rows[b]); });
    for (std::size_t r = 0; r < order.size(); ++r) {
      auto& row = rows[order[r]];
      (m == RankMetric::GMean ? row.rank_g_mean : m == RankMetric::F1 ? row.rank_f1 : row.rank_auc) = r + 1;
    }
  }
  std::sort(rows.begin(), rows.end(),
            [order_by](const GridRow& a, const GridRow& b) { return a.rank(order_by) < b.rank(order_by); });
  return {std::move(rows), order_by};
}

GridResult grid_search(const TimeSeries& series, const GridSpec& grid, const GridSearchOptions& options) {
  const auto configs = expand_grid(grid);
  const auto folds = expanding_folds(series, options.folds);
  const std::size_t tasks = configs.size() * folds.size();

  std::vector<FoldOutcome> outcomes(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      try {
        outcomes[t] = evaluate_fold(series, folds[t % folds.size()], configs[t / folds.size()], grid, options.seed,
                                    options.evaluation);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(tasks, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<GridRow> rows;
  rows.reserve(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    GridRow row;
    row.config = configs[c];
    double auc_sum = 0.0;
    std::size_t auc_folds = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const auto& o = outcomes[c * folds.size() + f];
      row.folds.push_back(o);
      row.mean_g_mean += o.report.g_mean.value;
      row.mean_f1 += o.report.f1.value;
      row.mean_macs += o.mean_macs;
      if (o.report.auc) {
        auc_sum += o.report.auc->value;
        ++auc_folds;
      }
    }
    const auto k = static_cast<double>(folds.size());
    row.mean_g_mean /= k;
    row.mean_f1 /= k;
    row.mean_macs /= k;
    if (auc_folds > 0) row.mean_auc = auc_sum / static_cast<double>(auc_folds);
    rows.push_back(std::move(row));
  }
  return rank_rows(std::move(rows), options.order_by);
}

std::string format_grid_csv(const GridResult& result) {
  const std::size_t fold_count = result.rows.empty() ? 0 : result.rows.front().folds.size();
  std::string out =
      "rank,config_id,recurrent,forward_a_minus,forward_a_plus,recurrent_a_minus,recurrent_a_plus,neurons,"
      "threshold_mv,g_l,interval_fraction,epochs";
  for (std::size_t f = 0; f < fold_count; ++f) {
    const auto p = "fold" + std::to_string(f);
    out += "," + p + "_g_mean," + p + "_f1," + p + "_auc," + p + "_macs";
  }
  out += ",mean_g_mean,mean_f1,mean_auc,mean_macs,rank_g_mean,rank_f1,rank_auc\n";

  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& row : result.rows) {
    const auto& c = row.config;
    out += std::to_string(row.rank(result.order_by));
    out += ',' + std::to_string(c.id);
    out += c.recurrent ? ",1" : ",0";
    out += ',' + format_double(c.forward.a_minus);
    out += ',' + format_double(c.forward.a_plus);
    out += ',' + (c.recurrent_stdp ? format_double(c.recurrent_stdp->a_minus) : std::string());
    out += ',' + (c.recurrent_stdp ? format_double(c.recurrent_stdp->a_plus) : std::string());
    out += ',' + std::to_string(c.neurons);
    out += ',' + format_double(c.threshold);
    out += ',' + format_double(c.leak);
    out += ',' + format_double(c.interval_fraction);
    out += ',' + std::to_string(c.epochs);
    for (const auto& f : row.folds) {
      out += ',' + format_double(f.report.g_mean.value);
      out += ',' + format_double(f.report.f1.value);
      out += ',' + opt(f.report.auc ? std::optional<double>(f.report.auc->value) : std::nullopt);
      out += ',' + format_double(f.mean_macs);
    }
    out += ',' + format_double(row.mean_g_mean);
    out += ',' + format_double(row.mean_f1);
    out += ',' + opt(row.mean_auc);
    out += ',' + format_double(row.mean_macs);
    out += ',' + std::to_string(row.rank_g_mean);
    out += ',' + std::to_string(row.rank_f1);
    out += ',' + std::to_string(row.rank_auc);
    out += '\n';
  }
  return out;
}

std::string to_string(RankMetric m) {
  switch (m) {
    case RankMetric::GMean: return "g_mean";
    case RankMetric::F1: return "f1";
    case RankMetric::Auc: return "auc";
  }
  return "g_mean";
}

std::optional<RankMetric> parse_rank_metric(const std::string& name) {
  if (name == "g_mean" || name == "gmean") return RankMetric::GMean;
  if (name == "f1") return RankMetric::F1;
  if (name == "auc") return RankMetric::Auc;
  return std::nullopt;
}

}  // namespace vspiker
