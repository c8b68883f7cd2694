#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "vspiker/lif.hpp"

using namespace vspiker;
using vspiker::testing::error_code;

TEST(LifStep, DecaysTowardRest) {
  LifParams p;
  auto s = reset_layer(1, p);
  s.voltages[0] = -60;
  const double in[] = {0.0};
  EXPECT_EQ(step(s, p, in), 0u);
  EXPECT_NEAR(s.voltages[0], -65 + 5 * std::exp(-1.0 / 100), 1e-12);
  EXPECT_NEAR(s.voltages[0], -60.04975, 1e-5);
}

TEST(LifStep, RestIsFixedPoint) {
  LifParams p;
  auto s = reset_layer(1, p);
  const double in[] = {0.0};
  for (int i = 0; i < 100; ++i) step(s, p, in);
  EXPECT_EQ(s.voltages[0], -65.0);
}

TEST(LifStep, SpikeResetsAndGoesRefractory) {
  LifParams p;
  auto s = reset_layer(1, p);
  s.voltages[0] = -56;
  const double in[] = {2.0};
  EXPECT_EQ(step(s, p, in), 1u);
  EXPECT_EQ(s.spiked[0], 1);
  EXPECT_EQ(s.voltages[0], -65.0);
  EXPECT_EQ(s.refractory_remaining[0], 5);
}

TEST(LifStep, RefractoryClampsAndIgnoresInput) {
  LifParams p;
  auto s = reset_layer(1, p);
  s.voltages[0] = -50;
  const double zero[] = {0.0};
  step(s, p, zero);
  const double big[] = {100.0};
  for (int k = 4; k >= 0; --k) {
    EXPECT_EQ(step(s, p, big), 0u);
    EXPECT_EQ(s.voltages[0], -65.0);
    EXPECT_EQ(s.refractory_remaining[0], k);
  }
  EXPECT_EQ(step(s, p, big), 1u);
}

TEST(LifReset, LayerAtRest) {
  const auto s = reset_layer(3, LifParams{});
  EXPECT_EQ(s.voltages, (std::vector<double>{-65, -65, -65}));
  EXPECT_EQ(s.refractory_remaining, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(reset_layer(1, LifParams{}).size(), 1u);
  EXPECT_EQ(error_code([] { reset_layer(0, LifParams{}); }), ErrorCode::InvalidArgument);
}

TEST(LifStep, DimensionMismatch) {
  auto s = reset_layer(3, LifParams{});
  const double in[] = {0.0, 1.0};
  EXPECT_EQ(error_code([&] { step(s, LifParams{}, in); }), ErrorCode::DimensionMismatch);
}

TEST(LifParamsValidate, RejectsBadValues) {
  LifParams p;
  p.leak = 1.0;
  EXPECT_TRUE(error_code([&] { p.validate(); }));
  p = {};
  p.threshold = -70;
  EXPECT_TRUE(error_code([&] { p.validate(); }));
  p = {};
  p.capacitance = 0;
  EXPECT_TRUE(error_code([&] { p.validate(); }));
  p = {};
  p.refractory_steps = -1;
  EXPECT_TRUE(error_code([&] { p.validate(); }));
  EXPECT_FALSE(error_code([] { LifParams{}.validate(); }));
}

TEST(LifProperty, DecayLawOverThousandSteps) {
  LifParams p;
  const double in[] = {0.0};
  for (double v0 : {-56.0, -65.0, -80.0}) {
    auto s = reset_layer(1, p);
    s.voltages[0] = v0;
    for (int t = 1; t <= 1000; ++t) {
      step(s, p, in);
      ASSERT_NEAR(s.voltages[0], (v0 + 65) * std::exp(-t / 100.0) - 65, 1e-9) << t;
    }
  }
}

TEST(LifProperty, RefractoryGapUnderSaturatingInput) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> d(0, 50);
  for (int refractory : {0, 1, 3, 5}) {
    LifParams p;
    p.refractory_steps = refractory;
    auto s = reset_layer(4, p);
    std::vector<long> last(4, -1000);
    for (long t = 0; t < 2000; ++t) {
      std::vector<double> in(4);
      for (auto& x : in) x = d(gen);
      step(s, p, in);
      for (std::size_t i = 0; i < 4; ++i)
        if (s.spiked[i]) {
          EXPECT_GE(t, last[i] + refractory + 1);
          last[i] = t;
        }
    }
  }
}

TEST(LifProperty, LargerInputNeverFewerSpikes) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> v(-70, -54);
  std::uniform_real_distribution<double> cur(-5, 10);
  std::uniform_real_distribution<double> extra(0, 5);
  std::uniform_int_distribution<int> refr(0, 2);
  LifParams p;
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = reset_layer(8, p);
    for (std::size_t i = 0; i < 8; ++i) {
      a.voltages[i] = v(gen);
      a.refractory_remaining[i] = refr(gen);
    }
    auto b = a;
    std::vector<double> ia(8), ib(8);
    for (std::size_t i = 0; i < 8; ++i) {
      ia[i] = cur(gen);
      ib[i] = ia[i] + extra(gen);
    }
    EXPECT_LE(step(a, p, ia), step(b, p, ib));
  }
}
