// Copyright 2026 The d3qn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "d3qn/errors.h"
#include "d3qn/sensor/depth_sensor.h"

namespace d3qn {
namespace {

DepthScan ConstantScan(int n, double value, double max_range = 5.0) {
  return DepthScan{std::vector<double>(n, value), max_range};
}

DepthScan RandomScan(std::mt19937_64& rng, int n, double max_range = 5.0) {
  std::uniform_real_distribution<double> u(0.0, max_range);
  DepthScan s{{}, max_range};
  for (int i = 0; i < n; ++i) s.ranges.push_back(u(rng));
  return s;
}

TEST(CorruptScanTest, DisabledConfigIsIdentity) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const DepthScan in = RandomScan(rng, 64);
    std::mt19937_64 stream(trial);
    const std::mt19937_64 before = stream;
    EXPECT_EQ(CorruptScan(in, CorruptionConfig::Disabled(), stream), in);
    EXPECT_EQ(stream, before);
  }
}

TEST(CorruptScanTest, BlurPreservesConstants) {
  CorruptionConfig cfg = CorruptionConfig::Disabled();
  cfg.blur_radius = 2;
  std::mt19937_64 rng(1);
  const DepthScan out = CorruptScan(ConstantScan(64, 2.0), cfg, rng);
  for (double r : out.ranges) EXPECT_EQ(r, 2.0);
}

TEST(CorruptScanTest, TriangularKernelShape) {
  EXPECT_EQ(TriangularKernel(0), std::vector<int>({1}));
  EXPECT_EQ(TriangularKernel(2), std::vector<int>({1, 2, 3, 2, 1}));
}

TEST(CorruptScanTest, BlurIsEdgeClampedWeightedMean) {
  CorruptionConfig cfg = CorruptionConfig::Disabled();
  cfg.blur_radius = 1;
  std::mt19937_64 rng(1);
  const DepthScan out = CorruptScan(DepthScan{{0.0, 4.0, 0.0, 4.0}, 5.0}, cfg, rng);
  // Weights 1,2,1 over (clamped) neighbours.
  EXPECT_DOUBLE_EQ(out.ranges[0], (0.0 + 0.0 * 2 + 4.0) / 4);
  EXPECT_DOUBLE_EQ(out.ranges[1], (0.0 + 4.0 * 2 + 0.0) / 4);
  EXPECT_DOUBLE_EQ(out.ranges[2], (4.0 + 0.0 * 2 + 4.0) / 4);
  EXPECT_DOUBLE_EQ(out.ranges[3], (0.0 + 4.0 * 2 + 4.0) / 4);
}

TEST(CorruptScanTest, NoiseCalibrationMonteCarlo) {
  CorruptionConfig cfg = CorruptionConfig::Disabled();
  cfg.gauss_sigma = 0.05;
  std::mt19937_64 rng(2024);
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;
  for (int i = 0; i < 1000; ++i) {
    const DepthScan out = CorruptScan(ConstantScan(100, 2.5), cfg, rng);
    for (double r : out.ranges) {
      const double d = r - 2.5;
      sum += d;
      sum_sq += d * d;
      ++count;
    }
  }
  ASSERT_EQ(count, 100000);
  const double mean = sum / count;
  const double std = std::sqrt(sum_sq / count - mean * mean);
  EXPECT_LT(std::abs(mean), 0.01);
  EXPECT_GE(std, 0.24);
  EXPECT_LE(std, 0.26);
}

TEST(CorruptScanTest, DropoutRateAndValue) {
  CorruptionConfig cfg = CorruptionConfig::Disabled();
  cfg.dropout_prob = 0.1;
  std::mt19937_64 rng(9);
  int dropped = 0;
  for (int i = 0; i < 1000; ++i) {
    const DepthScan out = CorruptScan(ConstantScan(100, 1.0), cfg, rng);
    for (double r : out.ranges) {
      EXPECT_TRUE(r == 1.0 || r == 5.0);
      dropped += r == 5.0;
    }
  }
  EXPECT_NEAR(dropped / 1e5, 0.1, 0.005);
}

TEST(CorruptScanTest, OutputClampedToRange) {
  CorruptionConfig cfg;
  cfg.gauss_sigma = 0.5;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const DepthScan out = CorruptScan(RandomScan(rng, 64), cfg, rng);
    for (double r : out.ranges) {
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 5.0);
    }
  }
}

TEST(CorruptScanTest, FixedSeedIsBitwiseReproducible) {
  std::mt19937_64 data(5);
  const DepthScan in = RandomScan(data, 64);
  std::mt19937_64 a(77);
  std::mt19937_64 b(77);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(CorruptScan(in, CorruptionConfig{}, a), CorruptScan(in, CorruptionConfig{}, b));
  }
}

TEST(CorruptionConfigTest, RejectsInvalidValues) {
  EXPECT_THROW((CorruptionConfig{-0.1, 0, 0.0}.Validate()), ConfigError);
  EXPECT_THROW((CorruptionConfig{0.0, -1, 0.0}.Validate()), ConfigError);
  EXPECT_THROW((CorruptionConfig{0.0, 0, 1.0}.Validate()), ConfigError);
  EXPECT_NO_THROW(CorruptionConfig{}.Validate());
}

TEST(ObservationTest, MaxRangeScanNormalizesToOne) {
  const std::vector<DepthScan> h = {ConstantScan(64, 5.0)};
  const Observation obs = MakeObservation(h, 5.0, 1);
  ASSERT_EQ(obs.values.size(), 64u);
  for (float v : obs.values) EXPECT_EQ(v, 1.0f);
}

TEST(ObservationTest, HalfRangeNormalizesToHalf) {
  const std::vector<DepthScan> h = {ConstantScan(8, 2.5)};
  for (float v : MakeObservation(h, 5.0, 1).values) EXPECT_EQ(v, 0.5f);
}

TEST(ObservationTest, StackRepeatsOldestAtEpisodeStart) {
  const std::vector<DepthScan> h = {DepthScan{{1.0, 2.0, 3.0}, 5.0}};
  const Observation obs = MakeObservation(h, 5.0, 4);
  ASSERT_EQ(obs.values.size(), 12u);
  for (int f = 0; f < 4; ++f) {
    EXPECT_EQ(obs.values[3 * f + 0], 0.2f);
    EXPECT_EQ(obs.values[3 * f + 1], 0.4f);
    EXPECT_EQ(obs.values[3 * f + 2], 0.6f);
  }
}

TEST(ObservationTest, NewestFrameIsLast) {
  const std::vector<DepthScan> h = {ConstantScan(2, 1.0), ConstantScan(2, 2.0),
                                    ConstantScan(2, 3.0)};
  const Observation obs = MakeObservation(h, 5.0, 2);
  EXPECT_EQ(obs.values, std::vector<float>({0.4f, 0.4f, 0.6f, 0.6f}));
}

TEST(ObservationTest, EmptyHistoryIsUsageError) {
  EXPECT_THROW(MakeObservation(std::vector<DepthScan>{}, 5.0, 1), UsageError);
}

TEST(ObservationTest, ValuesAlwaysInUnitInterval) {
  std::mt19937_64 rng(8);
  ObservationStack stack(5.0, 3);
  for (int i = 0; i < 100; ++i) {
    DepthScan s = RandomScan(rng, 16);
    s.ranges[i % 16] = 7.0;  // out-of-range inputs are clamped
    stack.Push(s);
    for (float v : stack.Current().values) {
      EXPECT_GE(v, 0.0f);
      EXPECT_LE(v, 1.0f);
    }
    EXPECT_EQ(stack.Current().values.size(), 48u);
  }
}

}  // namespace
}  // namespace d3qn
