// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vspiker/energy.hpp"
#include "vspiker/grid_search.hpp"
#include "vspiker/interval_encoder.hpp"
#include "vspiker/lif.hpp"
#include "vspiker/metrics.hpp"
#include "vspiker/network.hpp"
#include "vspiker/stdp.hpp"

using namespace vspiker;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome result(bool pass, const std::string& detail) { return {pass, detail}; }

TimeSeries sinusoid(std::size_t n, double period = 50.0) {
  TimeSeries s;
  for (std::size_t i = 0; i < n; ++i) {
    s.timestamps.push_back(double(i) * 60);
    s.values.push_back(10 + 5 * std::sin(2 * M_PI * double(i) / period));
  }
  return s;
}

IntervalEncoder encoder_for(const TimeSeries& s, double fraction) {
  const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
  return IntervalEncoder::create({*lo, *hi}, fraction);
}

NetworkConfig active_config(std::size_t neurons, bool recurrent, std::uint64_t seed) {
  NetworkConfig c;
  c.neurons = neurons;
  c.recurrent = recurrent;
  c.seed = seed;
  c.lif.threshold = -62.0;
  return c;
}

// 1: a non-recurrent layer of 1000 neurons costs 2000 MACs every step.
Outcome energy_case_study() {
  NetworkConfig c;
  c.neurons = 1000;
  c.seed = 1;
  auto net = Network::build(c, IntervalEncoder::with_length({0, 60}, 1.0));
  const auto signal = net.run_series(sinusoid(500), 0);
  const auto macs = vacuum_macs_for_run(signal.counts, 1000, false);
  bool exact = macs.mean == 2000.0;
  for (auto m : macs.per_step) exact = exact && m == 2000;
  return result(exact, "mean " + std::to_string(macs.mean) + " over " + std::to_string(signal.size()) + " steps");
}

// 2: per-step MACs of a recurrent run follow n (s_r + 2) for the observed s_r.
Outcome recurrent_energy_law() {
  const std::size_t n = 100;
  auto net = Network::build(active_config(n, true, 2), IntervalEncoder::create({5, 15}, 0.1));
  std::mt19937_64 gen(2);
  std::normal_distribution<double> noise(0, 0.3);
  std::vector<std::uint32_t> spikes;
  std::size_t mismatched = 0, busiest = 0;
  const auto series = sinusoid(10'000, 37.0);
  for (double v : series.values) {
    const auto step = net.infer_step(v + noise(gen), std::numeric_limits<double>::infinity());
    if (step.spike_count != net.last_spikes().size()) ++mismatched;
    spikes.push_back(static_cast<std::uint32_t>(step.spike_count));
    busiest = std::max(busiest, step.spike_count);
  }
  const auto macs = vacuum_macs_for_run(spikes, n, true);
  for (std::size_t t = 0; t < spikes.size(); ++t)
    if (macs.per_step[t] != n * (spikes[t] + 2) || macs.per_step[t] != vacuum_macs_per_step(n, true, spikes[t]))
      ++mismatched;
  return result(mismatched == 0 && busiest > 0 && spikes.size() == 10'000,
                std::to_string(spikes.size()) + " steps, max s_r " + std::to_string(busiest) + ", " +
                    std::to_string(mismatched) + " mismatches");
}

// 3: one spike per value, monotone neuron count bounded by width(I)/len + 1.
Outcome encoding_invariant() {
  auto enc = IntervalEncoder::create({0, 10}, 0.01);
  const auto clamp = enc.config().clamp;
  const double bound = clamp.width() / enc.interval_length() + 1;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> wide(-60, 70);
  std::uniform_real_distribution<double> inside(0, 10);
  const std::vector<double> extremes{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
                                     1e300, -1e300, -10.0, 20.0, clamp.lo, clamp.hi};
  std::size_t previous = enc.neuron_count(), bad = 0;
  bool monotone = true;
  for (std::size_t i = 0; i < 100'000; ++i) {
    const double v = i < extremes.size() * 2 && i % 2 ? extremes[i / 2] : (i % 3 ? inside(gen) : wide(gen));
    const auto neuron = enc.encode(v);
    const double clamped = std::clamp(v, clamp.lo, clamp.hi);
    // Exactly one neuron owns the (clamped) value, and it is the one returned.
    if (neuron >= enc.neuron_count() || enc.lookup(clamped) != neuron) ++bad;
    monotone = monotone && enc.neuron_count() >= previous;
    previous = enc.neuron_count();
    if (double(enc.neuron_count()) > bound) ++bad;
  }
  return result(bad == 0 && monotone, std::to_string(enc.neuron_count()) + " neurons, bound " +
                                          std::to_string(bound) + ", " + std::to_string(bad) + " violations");
}

// 4: zero-input decay against the closed form.
Outcome lif_decay() {
  LifParams p;
  p.leak = leak_for_time_constant(100);
  double worst = 0;
  for (double v0 : {-56.0, -60.0, -80.0, -120.0}) {
    auto state = reset_layer(1, p);
    state.voltages[0] = v0;
    const std::vector<double> zero{0.0};
    for (int t = 1; t <= 1000; ++t) {
      step(state, p, zero);
      const double expected = (v0 - p.resting_potential) * std::exp(-t / 100.0) + p.resting_potential;
      worst = std::max(worst, std::abs(state.voltages[0] - expected));
    }
  }
  std::ostringstream d;
  d << "max error " << worst;
  return result(worst <= 1e-9, d.str());
}

// 5: trace-driven pair updates against direct evaluation of the pair rule.
Outcome stdp_closed_form() {
  const std::vector<std::size_t> none, zero{0};
  double worst = 0;
  for (double a_plus : {0.1, -0.1})
    for (double a_minus : {-0.1, 0.1})
      for (int dt = -5; dt <= 5; ++dt) {
        if (dt == 0) continue;
        const StdpParams p{a_plus, a_minus, 1.051, 1.051};
        WeightMatrix w(1, 1, 0.0);
        TraceState traces;
        traces.reset(1, 1);
        const int t_pre = dt > 0 ? 0 : -dt, t_post = dt > 0 ? dt : 0;
        for (int t = 0; t <= 8; ++t) stdp_update(w, traces, t == t_pre ? zero : none, t == t_post ? zero : none, p);
        const double expected = dt > 0 ? a_plus * std::exp(-dt / 1.051) : a_minus * std::exp(dt / 1.051);
        worst = std::max(worst, std::abs(w(0, 0) - expected));
      }
  std::ostringstream d;
  d << "max error " << worst << " over dt in +-{1..5}";
  return result(worst <= 1e-12, d.str());
}

// 6: pure depression never lifts a weight above its initial value.
Outcome depression_monotonicity() {
  std::size_t checks = 0, violations = 0, spikes = 0;
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0, 20);
  TimeSeries stream;
  for (std::size_t i = 0; i < 5000; ++i) {
    stream.timestamps.push_back(double(i));
    stream.values.push_back(i % 7 == 0 ? u(gen) : 10 + 4 * std::sin(double(i) / 9.0));
  }
  for (bool recurrent : {false, true}) {
    auto net = Network::build(active_config(60, recurrent, 6), IntervalEncoder::create({6, 14}, 0.05));
    const auto initial_recurrent = recurrent ? *net.recurrent_weights() : WeightMatrix{};
    TrainingOptions o;
    o.forward = {-0.1, -0.1, 1.051, 1.051};
    if (recurrent) o.recurrent = o.forward;
    o.epochs = 2;
    o.on_step = [&](const Network& n, int, std::size_t) {
      const auto& w = n.forward_weights();
      for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t c = 0; c < w.cols(); ++c)
          if (w(r, c) > n.initial_forward_weight(r, c)) ++violations;
      if (recurrent)
        for (std::size_t k = 0; k < initial_recurrent.data().size(); ++k)
          if (n.recurrent_weights()->data()[k] > initial_recurrent.data()[k]) ++violations;
      ++checks;
    };
    for (auto s : train(net, stream, o).spikes_per_epoch) spikes += s;
  }
  return result(violations == 0 && checks >= 20'000 && spikes > 0,
                std::to_string(checks) + " updates checked, " + std::to_string(spikes) + " training spikes, " +
                    std::to_string(violations) + " violations");
}

// 7: pure depression suppresses activity on held-out normal data.
Outcome activity_suppression() {
  const auto series = sinusoid(5000);
  const auto train_part = series.slice(0, 4000);
  const auto held_out = series.slice(4000, 5000);
  int not_higher = 0, strictly_lower = 0;
  std::ostringstream d;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto config = active_config(100, false, seed);
    auto untrained = Network::build(config, encoder_for(train_part, 0.1));
    auto trained = untrained;
    TrainingOptions o;
    o.forward = {-0.1, -0.1, 1.051, 1.051};
    train(trained, train_part, o);
    auto total = [&](Network& net) {
      std::size_t sum = 0;
      for (auto c : net.run_series(held_out, 0).counts) sum += c;
      return sum;
    };
    const auto before = total(untrained), after = total(trained);
    not_higher += after <= before;
    strictly_lower += after < before;
    d << (seed ? " " : "") << before << "->" << after;
  }
  return result(not_higher == 10 && strictly_lower >= 8,
                std::to_string(strictly_lower) + "/10 strictly lower; spikes " + d.str());
}

TimeSeries anomaly_series() {
  TimeSeries s;
  s.labels.emplace();
  std::mt19937_64 gen(8);
  std::normal_distribution<double> noise(0, 0.2);
  for (std::size_t i = 0; i < 6000; ++i) {
    const bool anomalous = i >= 4400 && i < 4700;
    const double amplitude = anomalous ? 9.0 : 5.0;
    s.timestamps.push_back(double(i) * 60);
    s.values.push_back(10 + amplitude * std::sin(2 * M_PI * double(i) / 50.0) + noise(gen));
    s.labels->push_back(anomalous);
  }
  return s;
}

GridSpec sixteen_cells() {
  GridSpec g;
  g.forward_a_minus = {-0.1, 0.1};
  g.forward_a_plus = {-0.1};
  g.recurrence = {false};
  g.neurons = {50, 100};
  g.thresholds = {-62, -58};
  g.leaks = {leak_for_time_constant(100)};
  g.interval_fractions = {0.05, 0.1};
  g.epochs = {1};
  return g;
}

std::string grid_csv_workers1;

// 8: the best of a 16-cell grid separates an amplitude-shift anomaly.
Outcome desk_scale_detection() {
  GridSearchOptions o;
  o.seed = 2024;
  o.workers = 1;
  o.order_by = RankMetric::Auc;
  const auto configs = expand_grid(sixteen_cells());
  const auto r = grid_search(anomaly_series(), sixteen_cells(), o);
  grid_csv_workers1 = format_grid_csv(r);
  const auto& best = r.rows.front();
  const double best_auc = best.mean_auc.value_or(0.0);
  std::ostringstream d;
  d << configs.size() << " cells, best AUC " << best_auc << " (config " << best.config.id << ", G-Mean "
    << best.mean_g_mean << ", " << best.mean_macs << " MACs/step)";
  return result(configs.size() == 16 && best_auc >= 0.8, d.str());
}

// 9: trapezoidal AUC against the pairwise ranking statistic.
Outcome auc_oracle() {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> len(2, 200), coarse(0, 5);
  std::uniform_real_distribution<double> fine(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(gen);
    std::vector<double> s(n);
    std::vector<bool> l(n);
    for (int i = 0; i < n; ++i) {
      s[i] = trial % 2 ? coarse(gen) : fine(gen);
      l[i] = gen() % 4 == 0;
    }
    l[0] = true;
    l[n - 1] = false;
    double wins = 0, pairs = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (l[i] && !l[j]) {
          pairs += 1;
          wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
        }
    worst = std::max(worst, std::abs(auc(s, l) - wins / pairs));
  }
  std::ostringstream d;
  d << "max difference " << worst << " over 100 instances";
  return result(worst <= 1e-9, d.str());
}

// 10: baseline MAC golden values.
Outcome baseline_golden() {
  const auto dense = baseline_macs(layers::Dense{32, 64});
  const auto lstm = baseline_macs(layers::Lstm{10, 8, 4});
  const auto ocsvm = baseline_macs(layers::Ocsvm{100, 10});
  const auto lof = baseline_macs(layers::Lof{10, 30, 0});
  return result(dense == 2048 && lstm == 4800 && ocsvm == 2200 && lof == 1012,
                "Dense " + std::to_string(dense) + ", Lstm " + std::to_string(lstm) + ", Ocsvm " +
                    std::to_string(ocsvm) + ", Lof " + std::to_string(lof));
}

// 11: worker count does not change a byte of the ranking.
Outcome determinism() {
  GridSearchOptions o;
  o.seed = 2024;
  o.workers = 8;
  o.order_by = RankMetric::Auc;
  const auto csv = format_grid_csv(grid_search(anomaly_series(), sixteen_cells(), o));
  return result(!grid_csv_workers1.empty() && csv == grid_csv_workers1,
                "workers 1 vs 8: " + std::to_string(csv.size()) + " bytes, " +
                    (csv == grid_csv_workers1 ? "identical" : "different"));
}

// 12: behaviour classification fixtures.
Outcome behaviour_fixtures() {
  using K = ConnectionKind;
  using B = SynapticBehaviour;
  struct Fixture {
    K kind;
    double a_minus, a_plus;
    B expected;
  };
  const std::vector<Fixture> fixtures{
      {K::Forward, 0.1, 0.1, B::Excitatory},    {K::Recurrent, 0.1, 0.1, B::Excitatory},
      {K::Forward, -0.1, -0.1, B::Inhibitory},  {K::Recurrent, -0.1, -0.1, B::Inhibitory},
      {K::Recurrent, -0.1, 0.1, B::Balanced},   {K::Recurrent, 0.1, -0.1, B::Balanced},
      {K::Forward, -0.1, 0.1, B::Inhibitory},   {K::Forward, 0.1, -0.1, B::Excitatory},
  };
  std::size_t ok = 0;
  for (const auto& f : fixtures) ok += classify_behaviour(f.kind, f.a_minus, f.a_plus) == f.expected;
  return result(ok == fixtures.size(), std::to_string(ok) + "/" + std::to_string(fixtures.size()) + " fixtures");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"energy case study: 2000 MACs/step at n=1000", energy_case_study},
      {"recurrent energy law n(s_r+2) over 10^4 steps", recurrent_energy_law},
      {"single-spike encoding, bounded monotone growth", encoding_invariant},
      {"LIF zero-input decay within 1e-9", lif_decay},
      {"STDP pair updates match closed form within 1e-12", stdp_closed_form},
      {"pure depression never raises a weight", depression_monotonicity},
      {"pure depression suppresses held-out activity", activity_suppression},
      {"16-cell grid reaches AUC >= 0.8 on amplitude shift", desk_scale_detection},
      {"AUC equals pairwise ranking statistic", auc_oracle},
      {"baseline MAC golden values", baseline_golden},
      {"grid search identical at 1 and 8 workers", determinism},
      {"behaviour classification fixtures", behaviour_fixtures},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
