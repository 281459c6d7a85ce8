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

#include "d3qn/sim/environment.h"

#include <cmath>
#include <utility>

#include "d3qn/errors.h"

namespace d3qn {

void EnvConfig::Validate() const {
  if (!(robot_radius > 0.0)) throw ConfigError("robot_radius must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
  if (n_rays < 2) throw ConfigError("n_rays must be >= 2");
  if (!(fov > 0.0 && fov <= 2.0 * std::numbers::pi)) {
    throw ConfigError("fov must lie in (0, 2*pi]");
  }
  if (!(max_range > 0.0)) throw ConfigError("max_range must be > 0");
  if (max_spawn_attempts < 1) {
    throw ConfigError("max_spawn_attempts must be >= 1");
  }
}

std::string_view TerminalName(Terminal t) {
  switch (t) {
    case Terminal::kRunning:
      return "running";
    case Terminal::kCollision:
      return "collision";
    case Terminal::kStepLimit:
      return "step_limit";
  }
  return "unknown";
}

bool CheckCollision(const WorldMap& world, const RobotState& state) {
  const Vec2 c{state.x, state.y};
  if (c.x < world.bounds.min.x || c.x > world.bounds.max.x ||
      c.y < world.bounds.min.y || c.y > world.bounds.max.y) {
    return true;
  }
  for (const Shape& shape : world.obstacles) {
    if (DiscTouches(c, state.radius, shape)) return true;
  }
  return false;
}

DepthScan RaycastScan(const WorldMap& world, const RobotState& state,
                      int n_rays, double fov, double max_range) {
  if (n_rays < 2) throw UsageError("RaycastScan: n_rays must be >= 2");
  DepthScan scan;
  scan.max_range = max_range;
  scan.ranges.resize(n_rays);
  const Vec2 origin{state.x, state.y};
  const double spacing = fov / (n_rays - 1);
  for (int k = 0; k < n_rays; ++k) {
    const double bearing = state.theta - fov / 2 + k * spacing;
    const Vec2 dir{std::cos(bearing), std::sin(bearing)};
    double nearest = max_range;
    for (const Shape& shape : world.obstacles) {
      if (auto t = RayHit(origin, dir, shape); t && *t < nearest) nearest = *t;
    }
    scan.ranges[k] = nearest;
  }
  return scan;
}

double StepReward(const ActionPair& action, double dt) {
  return action.linear_velocity() * std::cos(action.angular_velocity()) * dt;
}

Environment::Environment(std::shared_ptr<const WorldMap> world,
                         EnvConfig config, std::uint64_t seed)
    : world_(std::move(world)), config_(config), rng_(seed) {
  if (!world_) throw UsageError("Environment: null world");
  config_.Validate();
  state_.radius = config_.robot_radius;
}

DepthScan Environment::Reset(std::optional<std::uint64_t> seed) {
  if (seed) rng_.seed(*seed);
  const auto& regions = world_->spawn_regions;
  if (regions.empty()) throw WorldError("world has no spawn regions");

  std::vector<double> areas;
  for (const Box& r : regions) {
    areas.push_back((r.max.x - r.min.x) * (r.max.y - r.min.y));
  }
  std::discrete_distribution<int> pick_region(areas.begin(), areas.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int attempt = 0; attempt < config_.max_spawn_attempts; ++attempt) {
    const Box& r = regions[pick_region(rng_)];
    RobotState candidate;
    candidate.radius = config_.robot_radius;
    candidate.x = r.min.x + unit(rng_) * (r.max.x - r.min.x);
    candidate.y = r.min.y + unit(rng_) * (r.max.y - r.min.y);
    candidate.theta =
        WrapAngle(std::numbers::pi - unit(rng_) * 2.0 * std::numbers::pi);
    if (!CheckCollision(*world_, candidate)) {
      state_ = candidate;
      step_ = 0;
      running_ = true;
      return Scan();
    }
  }
  running_ = false;
  throw WorldError("no collision-free spawn pose in world '" + world_->name +
                   "' after " + std::to_string(config_.max_spawn_attempts) +
                   " attempts");
}

EnvStepResult Environment::Step(const ActionPair& action) {
  if (!running_) throw UsageError("Environment::Step on a finished episode");
  if (!action.valid()) throw UsageError("Environment::Step: invalid action");
  state_ = StepRobot(state_, action, config_.dt);
  ++step_;

  EnvStepResult result;
  result.step_index = step_;
  if (CheckCollision(*world_, state_)) {
    result.reward = config_.collision_penalty;
    result.terminal = Terminal::kCollision;
  } else {
    result.reward = StepReward(action, config_.dt);
    result.terminal =
        step_ >= config_.max_steps ? Terminal::kStepLimit : Terminal::kRunning;
  }
  running_ = result.terminal == Terminal::kRunning;
  result.observation = Scan();
  return result;
}

DepthScan Environment::Scan() const {
  return RaycastScan(*world_, state_, config_.n_rays, config_.fov,
                     config_.max_range);
}

}  // namespace d3qn
