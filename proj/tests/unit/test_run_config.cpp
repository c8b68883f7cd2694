#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "vspiker/run_config.hpp"
#include "vspiker/text.hpp"

using namespace vspiker;
using vspiker::testing::error_code;
using vspiker::testing::TempDir;

namespace {

const char* kFull = R"(
[run]
seed = 42
out_dir = results
workers = 3

[data]
series = data/s.csv
labels = /abs/labels.json
dataset = realKnownCause/x.csv
value_column = v
resample = true
max_fill = 2
train_fraction = 0.5

[encoder]
interval_length = 0.25
domain_min = 0
domain_max = 10
clamp_min = -5
clamp_max = 15

[network]
neurons = 40
recurrent = true
threshold = -62
membrane_time_constant = 200
refractory_steps = 3
weight_min = -1

[stdp_forward]
a_minus = 0.1
a_plus = 0.2

[stdp_recurrent]
a_plus = 0.1

[training]
epochs = 3

[detector]
smoothing = 10
threshold = 2.5

[evaluation]
threshold_count = 20
smoothing_windows = [0, 10, 100]
folds = 4
rank_by = auc

[grid]
neurons = 10, 20
recurrence = [false]
membrane_time_constants = 100, 150
epochs = 1
)";

}  // namespace

TEST(RunConfig, ParsesEverySection) {
  const auto c = parse_run_config(kFull, "/base");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.out_dir, std::filesystem::path("/base/results"));
  EXPECT_EQ(c.workers, 3u);
  EXPECT_EQ(c.data.series, std::filesystem::path("/base/data/s.csv"));
  EXPECT_EQ(c.data.labels, std::filesystem::path("/abs/labels.json"));
  EXPECT_EQ(c.data.dataset, "realKnownCause/x.csv");
  EXPECT_EQ(c.data.schema.value_column, "v");
  EXPECT_TRUE(c.data.resample);
  EXPECT_EQ(c.data.max_fill, 2u);
  EXPECT_EQ(c.data.train_fraction, 0.5);
  EXPECT_EQ(c.encoder.interval_length, 0.25);
  EXPECT_FALSE(c.encoder.interval_fraction);
  EXPECT_EQ(c.encoder.clamp_max, 15.0);
  EXPECT_EQ(c.network.neurons, 40u);
  EXPECT_TRUE(c.network.recurrent);
  EXPECT_EQ(c.network.lif.threshold, -62.0);
  EXPECT_DOUBLE_EQ(c.network.lif.leak, leak_for_time_constant(200));
  EXPECT_EQ(c.network.lif.refractory_steps, 3);
  EXPECT_EQ(c.network.bounds.min, -1.0);
  EXPECT_EQ(c.forward_stdp.a_minus, 0.1);
  EXPECT_EQ(c.forward_stdp.a_plus, 0.2);
  ASSERT_TRUE(c.recurrent_stdp);
  EXPECT_EQ(c.recurrent_stdp->a_plus, 0.1);
  EXPECT_EQ(c.recurrent_stdp->a_minus, -0.1);
  EXPECT_EQ(c.epochs, 3);
  EXPECT_EQ(c.detector.smoothing_window, 10u);
  EXPECT_EQ(c.detector.threshold, 2.5);
  EXPECT_EQ(c.evaluation.threshold_count, 20u);
  EXPECT_EQ(c.evaluation.smoothing_windows, (std::vector<std::size_t>{0, 10, 100}));
  EXPECT_EQ(c.folds, 4u);
  EXPECT_EQ(c.rank_by, RankMetric::Auc);
  EXPECT_EQ(c.grid.neurons, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(c.grid.recurrence, std::vector<bool>{false});
  ASSERT_EQ(c.grid.leaks.size(), 2u);
  EXPECT_DOUBLE_EQ(c.grid.leaks[1], leak_for_time_constant(150));
  EXPECT_EQ(c.grid.base_lif.threshold, -62.0);
}

TEST(RunConfig, DefaultsWhenEmpty) {
  const auto c = parse_run_config("");
  EXPECT_FALSE(c.seed);
  EXPECT_FALSE(c.recurrent_stdp);
  EXPECT_EQ(c.forward_stdp.a_minus, -0.1);
  EXPECT_EQ(c.forward_stdp.a_plus, -0.1);
  EXPECT_EQ(c.epochs, 1);
  EXPECT_EQ(c.data.train_fraction, 1.0);
}

TEST(RunConfig, RejectsUnknownNamesAndBadValues) {
  for (const char* text : {"[bogus]\nx = 1\n", "[run]\nsede = 1\n", "[run]\nseed = abc\n", "[run]\nseed = -1\n",
                           "[network]\nrecurrent = maybe\n", "[data]\ntrain_fraction = 0\n",
                           "[encoder]\ninterval_fraction = 0.1\ninterval_length = 1\n", "[encoder]\nclamp_min = 0\n",
                           "[network]\ng_l = 0.01\nmembrane_time_constant = 100\n", "[evaluation]\nrank_by = recall\n",
                           "[grid]\nneurons = []\n", "[run\nseed = 1\n"})
    EXPECT_EQ(error_code([&] { parse_run_config(text); }), ErrorCode::Config) << text;
}

TEST(RunConfig, LoadResolvesAgainstFileDirectory) {
  TempDir dir;
  std::filesystem::create_directories(dir / "cfg");
  write_file(dir / "cfg" / "run.ini", "[data]\nseries = ../d.csv\n");
  const auto c = load_run_config(dir / "cfg" / "run.ini");
  EXPECT_EQ(c.data.series.lexically_normal(), (dir / "d.csv").lexically_normal());
  EXPECT_EQ(error_code([&] { load_run_config(dir / "missing.ini"); }), ErrorCode::Config);
}
