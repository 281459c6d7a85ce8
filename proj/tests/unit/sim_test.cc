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
#include <numbers>
#include <random>
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "d3qn/errors.h"
#include "d3qn/sim/environment.h"
#include "d3qn/sim/geometry.h"
#include "d3qn/sim/kinematics.h"
#include "d3qn/sim/world.h"
#include "test_support.h"

namespace d3qn {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GeometryTest, SegmentDistanceUsesClosestPoint) {
  const Segment s{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(SquaredDistance({1, 3}, s), 9.0);
  EXPECT_DOUBLE_EQ(SquaredDistance({-3, 4}, s), 25.0);
  EXPECT_DOUBLE_EQ(SquaredDistance({5, 4}, s), 25.0);
}

TEST(GeometryTest, PointsInsideSolidsAreAtZeroDistance) {
  EXPECT_EQ(SquaredDistance({1, 1}, Box{{0, 0}, {2, 2}}), 0.0);
  EXPECT_EQ(SquaredDistance({0.5, 0}, Disc{{0, 0}, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(SquaredDistance({3, 0}, Disc{{0, 0}, 1.0}), 4.0);
}

TEST(GeometryTest, RayHitsSegmentBoxAndDisc) {
  const Vec2 o{0, 0};
  const Vec2 dir{1, 0};
  EXPECT_DOUBLE_EQ(*RayHit(o, dir, Segment{{3, -1}, {3, 1}}), 3.0);
  EXPECT_DOUBLE_EQ(*RayHit(o, dir, Box{{2, -1}, {4, 1}}), 2.0);
  EXPECT_DOUBLE_EQ(*RayHit(o, dir, Disc{{5, 0}, 1.0}), 4.0);
  EXPECT_FALSE(RayHit(o, dir, Segment{{-3, -1}, {-3, 1}}).has_value());
  EXPECT_FALSE(RayHit(o, dir, Disc{{0, 5}, 1.0}).has_value());
  // Origin inside a solid hits immediately.
  EXPECT_EQ(*RayHit(o, dir, Box{{-1, -1}, {1, 1}}), 0.0);
}

TEST(KinematicsTest, StraightLine) {
  const RobotState s = StepRobot(RobotState{}, 0.4, 0.0, 0.2);
  EXPECT_DOUBLE_EQ(s.x, 0.08);
  EXPECT_DOUBLE_EQ(s.y, 0.0);
  EXPECT_DOUBLE_EQ(s.theta, 0.0);
}

TEST(KinematicsTest, PureRotation) {
  const RobotState s = StepRobot(RobotState{}, 0.0, kPi / 6, 0.2);
  EXPECT_EQ(s.x, 0.0);
  EXPECT_EQ(s.y, 0.0);
  EXPECT_NEAR(s.theta, kPi / 30, 1e-15);
}

TEST(KinematicsTest, ArcMatchesFrozenEulerOracle) {
  // Frozen from a 10^4-substep Euler integration and the closed form
  // (v / w) * (sin(w dt), 1 - cos(w dt)).
  const RobotState s = StepRobot(RobotState{}, 0.4, kPi / 6, 0.2);
  EXPECT_NEAR(s.x, 0.0798539, 1e-6);
  EXPECT_NEAR(s.y, 0.0041850, 1e-6);
  EXPECT_NEAR(s.theta, kPi / 30, 1e-15);
}

TEST(KinematicsTest, ArcAgreesWithEulerForAllActions) {
  const RobotState start{1.0, -2.0, 2.9, 0.2};
  for (int l = 0; l < kNumLinearActions; ++l) {
    for (int a = 0; a < kNumAngularActions; ++a) {
      const ActionPair action{l, a};
      const RobotState exact = StepRobot(start, action, 0.2);
      const RobotState euler = test::EulerIntegrate(
          start, action.linear_velocity(), action.angular_velocity(), 0.2, 10000);
      EXPECT_LT(std::hypot(exact.x - euler.x, exact.y - euler.y), 1e-5)
          << "action " << l << "," << a;
      EXPECT_NEAR(exact.theta, WrapAngle(euler.theta), 1e-9);
    }
  }
}

TEST(KinematicsTest, ThetaStaysWrapped) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  RobotState s;
  for (int i = 0; i < 5000; ++i) {
    s.theta = angle(rng);
    s = StepRobot(s, ActionPair{1, static_cast<int>(i % 5)}, 0.2);
    EXPECT_GT(s.theta, -kPi);
    EXPECT_LE(s.theta, kPi);
  }
  EXPECT_EQ(WrapAngle(-kPi), kPi);
  EXPECT_EQ(WrapAngle(kPi), kPi);
}

TEST(KinematicsTest, NonPositiveDtIsRejected) {
  EXPECT_THROW(StepRobot(RobotState{}, 0.4, 0.0, 0.0), UsageError);
}

TEST(WorldTest, EmptyWorldHasFourBoundaryWalls) {
  const WorldMap w = LoadWorld(R"({"format": 1, "name": "empty",
      "bounds": {"min": [0, 0], "max": [8, 8]}, "obstacles": [],
      "spawn_regions": [{"min": [1, 1], "max": [7, 7]}]})");
  ASSERT_EQ(w.obstacles.size(), 4u);
  for (const Shape& s : w.obstacles) EXPECT_TRUE(std::holds_alternative<Segment>(s));
}

TEST(WorldTest, InvertedBoxIsValidationError) {
  EXPECT_THROW(LoadWorld(R"({"format": 1, "name": "bad",
      "bounds": {"min": [0, 0], "max": [8, 8]},
      "obstacles": [{"type": "box", "min": [3, 3], "max": [2, 4]}],
      "spawn_regions": [{"min": [5, 5], "max": [7, 7]}]})"),
               ValidationError);
}

TEST(WorldTest, ObstacleOutsideBoundsIsValidationError) {
  EXPECT_THROW(LoadWorld(R"({"format": 1, "name": "bad",
      "bounds": {"min": [0, 0], "max": [8, 8]},
      "obstacles": [{"type": "disc", "center": [7.9, 4], "radius": 0.5}],
      "spawn_regions": [{"min": [1, 1], "max": [3, 3]}]})"),
               ValidationError);
}

TEST(WorldTest, ParseFailureReportsLine) {
  try {
    LoadWorld("{\n\"format\": 1,\n\"name\": \"x\",\n\"bounds\": ]\n}");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(LoadWorld(R"({"format": 2, "name": "x",
      "bounds": {"min": [0, 0], "max": [8, 8]}, "obstacles": [],
      "spawn_regions": [{"min": [1, 1], "max": [7, 7]}]})"),
               SchemaError);
  EXPECT_THROW(LoadWorld(R"({"format": 1, "name": "x",
      "bounds": {"min": [0, 0], "max": [8, 8]},
      "obstacles": [{"type": "star"}],
      "spawn_regions": [{"min": [1, 1], "max": [7, 7]}]})"),
               SchemaError);
}

TEST(WorldTest, ShippedFixturesLoad) {
  const WorldMap simple = LoadWorldFile(test::WorldPath("simple.world"));
  EXPECT_EQ(simple.obstacles.size(), 7u);
  const WorldMap complex = LoadWorldFile(test::WorldPath("complex.world"));
  EXPECT_GT(complex.obstacles.size(), simple.obstacles.size());
  const WorldMap heldout = LoadWorldFile(test::WorldPath("heldout.world"));
  EXPECT_GT(heldout.obstacles.size(), 4u);
}

TEST(WorldTest, JsonRoundTrip) {
  const WorldMap w = LoadWorldFile(test::WorldPath("complex.world"));
  const WorldMap again = LoadWorld(WorldToJson(w));
  ASSERT_EQ(again.obstacles.size(), w.obstacles.size());
  EXPECT_EQ(WorldToJson(again), WorldToJson(w));
}

TEST(CollisionTest, ClearanceAndPenetration) {
  const WorldMap room = test::EmptyRoom(4.0);  // walls at x = +-2
  RobotState s{1.7, 0.0, 0.0, 0.2};            // 0.3 from the wall
  EXPECT_FALSE(CheckCollision(room, s));
  s.x = 1.9;                                   // 0.1 from the wall
  EXPECT_TRUE(CheckCollision(room, s));
}

TEST(CollisionTest, TangentDiscCounts) {
  const WorldMap w = WorldMap::FromParts(
      "tangent", Box{{-5, -5}, {5, 5}}, {Disc{{0.75, 0.0}, 0.5}}, {Box{{-4, -4}, {-3, -3}}});
  EXPECT_TRUE(CheckCollision(w, RobotState{0.0, 0.0, 0.0, 0.25}));
  EXPECT_FALSE(CheckCollision(w, RobotState{-1e-9, 0.0, 0.0, 0.25}));
}

TEST(CollisionTest, CenterOutsideBoundsCollides) {
  EXPECT_TRUE(CheckCollision(test::EmptyRoom(4.0), RobotState{9.0, 0.0, 0.0, 0.2}));
}

TEST(RaycastTest, AxisAlignedRoom) {
  const WorldMap room = test::EmptyRoom(4.0);
  const RobotState s{0.0, 0.0, 0.0, 0.2};
  // Three rays over 90 degrees: -45, 0, +45.
  const DepthScan scan = RaycastScan(room, s, 3, kPi / 2, 5.0);
  ASSERT_EQ(scan.ranges.size(), 3u);
  EXPECT_NEAR(scan.ranges[1], 2.0, 1e-12);
  EXPECT_NEAR(scan.ranges[2], 2.828427, 1e-6);
  EXPECT_NEAR(scan.ranges[0], 2.828427, 1e-6);
}

TEST(RaycastTest, ClampsToMaxRange) {
  const DepthScan scan =
      RaycastScan(test::EmptyRoom(10.0), RobotState{}, 64, kPi / 2, 3.0);
  for (double r : scan.ranges) EXPECT_EQ(r, 3.0);
}

TEST(RaycastTest, MatchesAnalyticIntersectionInConvexRoom) {
  // Axis-aligned rectangle: the exit distance along (cos b, sin b) is the
  // smallest positive wall crossing.
  const double hw = 3.0;
  const double hh = 2.0;
  const WorldMap room = WorldMap::FromParts("rect", Box{{-hw, -hh}, {hw, hh}}, {},
                                            {Box{{-1, -1}, {1, 1}}});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-hw + 0.3, hw - 0.3);
  std::uniform_real_distribution<double> uy(-hh + 0.3, hh - 0.3);
  std::uniform_real_distribution<double> ut(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const RobotState s{ux(rng), uy(rng), ut(rng), 0.2};
    const DepthScan scan = RaycastScan(room, s, 16, 2.0, 100.0);
    for (int k = 0; k < 16; ++k) {
      const double b = s.theta - 1.0 + k * 2.0 / 15;
      const double c = std::cos(b);
      const double d = std::sin(b);
      double t = 1e300;
      if (c > 0) t = std::min(t, (hw - s.x) / c);
      if (c < 0) t = std::min(t, (-hw - s.x) / c);
      if (d > 0) t = std::min(t, (hh - s.y) / d);
      if (d < 0) t = std::min(t, (-hh - s.y) / d);
      EXPECT_NEAR(scan.ranges[k], t, 1e-9);
    }
  }
}

TEST(RewardTest, FormulaValues) {
  EXPECT_DOUBLE_EQ(StepReward(ActionPair{1, 2}, 0.2), 0.08);
  EXPECT_NEAR(StepReward(ActionPair{0, 0}, 0.2), 0.034641, 1e-6);
  EXPECT_NEAR(StepReward(ActionPair{0, 0}, 0.2), 0.2 * std::cos(kPi / 6) * 0.2, 1e-15);
}

TEST(RewardTest, NonCollisionRewardsAreBounded) {
  const double lo = 0.2 * std::cos(kPi / 6) * 0.2;
  for (int l = 0; l < kNumLinearActions; ++l) {
    for (int a = 0; a < kNumAngularActions; ++a) {
      const double r = StepReward(ActionPair{l, a}, 0.2);
      EXPECT_GE(r, lo - 1e-15);
      EXPECT_LE(r, 0.08 + 1e-15);
    }
  }
}

TEST(EnvironmentTest, CollisionGivesPenaltyAndTerminates) {
  auto world = std::make_shared<const WorldMap>(test::TinyRoom());
  Environment env(world, EnvConfig{}, 1);
  env.Reset();
  EnvStepResult r;
  int steps = 0;
  do {
    r = env.Step(ActionPair{1, 2});
    ++steps;
  } while (r.terminal == Terminal::kRunning);
  EXPECT_EQ(r.terminal, Terminal::kCollision);
  EXPECT_EQ(r.reward, -10.0);
  EXPECT_LE(steps, 3);
  EXPECT_THROW(env.Step(ActionPair{1, 2}), UsageError);
}

TEST(EnvironmentTest, StepLimitEndsEpisodeAt500) {
  auto world = std::make_shared<const WorldMap>(test::EmptyRoom(100.0));
  Environment env(world, EnvConfig{}, 1);
  env.Reset();
  env.set_state(RobotState{0.0, 0.0, 0.0, 0.2});
  double ret = 0.0;
  EnvStepResult r;
  for (int i = 0; i < 500; ++i) {
    r = env.Step(ActionPair{1, 2});
    ret += r.reward;
    EXPECT_EQ(r.step_index, i + 1);
    if (i < 499) {
      EXPECT_EQ(r.terminal, Terminal::kRunning);
    }
  }
  EXPECT_EQ(r.terminal, Terminal::kStepLimit);
  EXPECT_NEAR(ret, 40.0, 1e-9);
  EXPECT_FALSE(env.running());
}

TEST(EnvironmentTest, PenaltyIffCollision) {
  auto world = std::make_shared<const WorldMap>(LoadWorldFile(test::WorldPath("complex.world")));
  Environment env(world, EnvConfig{}, 5);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> lin(0, 1);
  std::uniform_int_distribution<int> ang(0, 4);
  for (int episode = 0; episode < 20; ++episode) {
    env.Reset();
    EnvStepResult r;
    do {
      r = env.Step(ActionPair{lin(rng), ang(rng)});
      EXPECT_EQ(r.reward == -10.0, r.terminal == Terminal::kCollision);
      EXPECT_LE(r.step_index, 500);
    } while (r.terminal == Terminal::kRunning);
  }
}

TEST(EnvironmentTest, ResetIsDeterministicPerSeed) {
  auto world = std::make_shared<const WorldMap>(LoadWorldFile(test::WorldPath("simple.world")));
  Environment a(world, EnvConfig{}, 99);
  Environment b(world, EnvConfig{}, 1234);
  a.Reset(7);
  b.Reset(7);
  EXPECT_EQ(a.state(), b.state());
  a.Reset(7);
  EXPECT_EQ(a.state(), b.state());
  EXPECT_EQ(a.step_index(), 0);
}

TEST(EnvironmentTest, DistinctSeedsGiveDistinctPoses) {
  auto world = std::make_shared<const WorldMap>(LoadWorldFile(test::WorldPath("simple.world")));
  Environment a(world, EnvConfig{}, 0);
  Environment b(world, EnvConfig{}, 0);
  int distinct = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    a.Reset(2 * i + 1);
    b.Reset(2 * i + 2);
    if (!(a.state() == b.state())) ++distinct;
  }
  EXPECT_GE(distinct, 99);
}

TEST(EnvironmentTest, SpawnsAreCollisionFreeAndInsideRegions) {
  auto world = std::make_shared<const WorldMap>(LoadWorldFile(test::WorldPath("complex.world")));
  Environment env(world, EnvConfig{}, 3);
  for (int i = 0; i < 300; ++i) {
    env.Reset();
    const RobotState& s = env.state();
    EXPECT_FALSE(CheckCollision(*world, s));
    bool inside = false;
    for (const Box& r : world->spawn_regions) {
      inside = inside || (s.x >= r.min.x && s.x <= r.max.x && s.y >= r.min.y && s.y <= r.max.y);
    }
    EXPECT_TRUE(inside);
  }
}

TEST(EnvironmentTest, SpawnRegionInsideObstacleIsWorldError) {
  auto world = std::make_shared<const WorldMap>(WorldMap::FromParts(
      "blocked", Box{{0, 0}, {8, 8}}, {Box{{2, 2}, {6, 6}}}, {Box{{3, 3}, {5, 5}}}));
  Environment env(world, EnvConfig{}, 1);
  EXPECT_THROW(env.Reset(), WorldError);
}

TEST(EnvironmentTest, IdenticalInputsGiveIdenticalSequences) {
  auto world = std::make_shared<const WorldMap>(LoadWorldFile(test::WorldPath("complex.world")));
  auto run = [&] {
    Environment env(world, EnvConfig{}, 42);
    env.Reset(17);
    std::vector<EnvStepResult> out;
    for (int i = 0; i < 200 && env.running(); ++i) {
      out.push_back(env.Step(ActionPair{i % 2, (i / 3) % 5}));
    }
    return out;
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace d3qn
