#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vspiker/energy.hpp"

using namespace vspiker;
using vspiker::testing::error_code;

TEST(VacuumMacs, PerStep) {
  EXPECT_EQ(vacuum_macs_per_step(1000, false, 0), 2000u);
  EXPECT_EQ(vacuum_macs_per_step(1000, true, 0), 2000u);
  EXPECT_EQ(vacuum_macs_per_step(1000, true, 3), 5000u);
  const auto e = vacuum_step_estimate(10, true, 4);
  EXPECT_EQ(e.update, 10u);
  EXPECT_EQ(e.spike, 50u);
  EXPECT_EQ(e.total(), 60u);
  EXPECT_EQ(error_code([] { vacuum_macs_per_step(10, true, 11); }), ErrorCode::SpikeCountOutOfRange);
}

TEST(VacuumMacs, NonRecurrentIgnoresSpikeCount) {
  for (std::size_t s = 0; s <= 50; ++s) EXPECT_EQ(vacuum_macs_per_step(50, false, s), 100u);
}

TEST(VacuumMacs, AffineInSpikeCountWithSlopeN) {
  for (std::size_t n : {1u, 7u, 100u, 2000u})
    for (std::size_t s = 1; s <= std::min<std::size_t>(n, 40); ++s)
      EXPECT_EQ(vacuum_macs_per_step(n, true, s) - vacuum_macs_per_step(n, true, s - 1), n);
}

TEST(VacuumMacs, Run) {
  const std::vector<std::uint32_t> spikes{0, 1, 2};
  const auto r = vacuum_macs_for_run(spikes, 10, true);
  EXPECT_EQ(r.per_step, (std::vector<MacCount>{20, 30, 40}));
  EXPECT_EQ(r.mean, 30.0);
  EXPECT_EQ(r.total, 90u);
  const auto flat = vacuum_macs_for_run(spikes, 1000, false);
  EXPECT_EQ(flat.mean, 2000.0);
  EXPECT_EQ(error_code([] { vacuum_macs_for_run(std::vector<std::uint32_t>{}, 10, true); }),
            ErrorCode::EmptySignal);
}

TEST(BaselineMacs, GoldenValues) {
  EXPECT_EQ(baseline_macs(layers::Dense{32, 64}), 2048u);
  EXPECT_EQ(baseline_macs(layers::Lstm{10, 8, 4}), 4800u);
  EXPECT_EQ(baseline_macs(layers::Ocsvm{100, 10}), 2200u);
  EXPECT_EQ(baseline_macs(layers::Lof{10, 30, 0}), 1012u);
  EXPECT_EQ(baseline_macs(layers::Conv1d{3, 2, 4, 10}), 240u);
  EXPECT_EQ(baseline_macs(layers::BatchNorm{17}), 17u);
  EXPECT_EQ(baseline_macs(layers::AvgPool{2, 9}), 18u);
  EXPECT_EQ(baseline_macs(layers::VacuumSpiker{1000, false, 0}), 2000u);
}

TEST(ModelMacs, Sums) {
  const std::vector<LayerSpec> two{layers::Dense{10, 5}, layers::Dense{5, 1}};
  EXPECT_EQ(model_macs(two), 55u);
  const std::vector<LayerSpec> one{layers::Ocsvm{100, 10}};
  EXPECT_EQ(model_macs(one), baseline_macs(one[0]));
  EXPECT_EQ(model_macs(one), 2200u);
}

TEST(ArchitectureJson, ParsesAllLayerTypes) {
  const auto doc = nlohmann::json::parse(R"([
    {"type": "dense", "inputs": 32, "outputs": 64},
    {"type": "conv1d", "kernel": 3, "in_channels": 2, "out_channels": 4, "output_size": 10},
    {"type": "lstm", "sequence_length": 10, "units": 8, "features": 4},
    {"type": "batch_norm", "size": 17},
    {"type": "avg_pool", "kernel": 2, "output_size": 9},
    {"type": "ocsvm", "support_vectors": 100, "dimensions": 10},
    {"type": "lof", "dimensions": 10, "neighbours": 30},
    {"type": "vacuum_spiker", "neurons": 1000, "recurrent": false}
  ])");
  const auto arch = architecture_from_json(doc);
  ASSERT_EQ(arch.size(), 8u);
  EXPECT_EQ(model_macs(arch), 2048u + 240 + 4800 + 17 + 18 + 2200 + 1012 + 2000);
  EXPECT_EQ(layer_name(arch[2]), "lstm");
  const auto wrapped = architecture_from_json(nlohmann::json::parse(R"({"layers": [{"type": "dense", "inputs": 2, "outputs": 3}]})"));
  EXPECT_EQ(model_macs(wrapped), 6u);
}

TEST(ArchitectureJson, Errors) {
  EXPECT_TRUE(error_code([] { layer_from_json(nlohmann::json::parse(R"({"type": "gru"})")); }));
  EXPECT_TRUE(error_code([] { layer_from_json(nlohmann::json::parse(R"({"type": "dense", "inputs": 3})")); }));
  EXPECT_TRUE(error_code([] { layer_from_json(nlohmann::json::parse(R"({"type": "dense", "inputs": -3, "outputs": 2})")); }));
}
