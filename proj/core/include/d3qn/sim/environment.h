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

#ifndef D3QN_SIM_ENVIRONMENT_H_
#define D3QN_SIM_ENVIRONMENT_H_

#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "d3qn/sim/kinematics.h"
#include "d3qn/sim/world.h"

namespace d3qn {

struct EnvConfig {
  double robot_radius = 0.2;
  double dt = 0.2;                 // seconds per control step
  int max_steps = 500;             // episode length cap
  double collision_penalty = -10.0;
  int n_rays = 64;
  double fov = std::numbers::pi / 2;
  double max_range = 5.0;
  int max_spawn_attempts = 1000;

  void Validate() const;
};

// Ray depths in meters, ray 0 at the right edge of the field of view.
struct DepthScan {
  std::vector<double> ranges;
  double max_range = 0.0;

  friend bool operator==(const DepthScan&, const DepthScan&) = default;
};

enum class Terminal { kRunning, kCollision, kStepLimit };

std::string_view TerminalName(Terminal t);

struct EnvStepResult {
  DepthScan observation;  // raw, before sensor corruption
  double reward = 0.0;
  Terminal terminal = Terminal::kRunning;
  int step_index = 0;

  friend bool operator==(const EnvStepResult&, const EnvStepResult&) = default;
};

// True iff the robot disc touches any obstacle or boundary wall (closed
// contact), or its center has left the bounds.
bool CheckCollision(const WorldMap& world, const RobotState& state);

// Distances from the robot center along n_rays bearings spread evenly over
// `fov`, clamped to max_range.
DepthScan RaycastScan(const WorldMap& world, const RobotState& state,
                      int n_rays, double fov, double max_range);

// Per-step reward for a non-colliding step: v * cos(omega) * dt.
double StepReward(const ActionPair& action, double dt);

// One episode context over a shared immutable world. Single-writer.
class Environment {
 public:
  Environment(std::shared_ptr<const WorldMap> world, EnvConfig config,
              std::uint64_t seed);

  // Places the robot at a uniformly sampled collision-free pose inside a
  // spawn region. Reseeds the sampler first when `seed` is given.
  // Throws WorldError after max_spawn_attempts rejected samples.
  DepthScan Reset(std::optional<std::uint64_t> seed = std::nullopt);

  // Throws UsageError on a finished (or never reset) episode.
  EnvStepResult Step(const ActionPair& action);

  DepthScan Scan() const;

  const RobotState& state() const { return state_; }
  // Overrides the pose of a running episode; test and replay hook.
  void set_state(const RobotState& state) { state_ = state; }
  int step_index() const { return step_; }
  bool running() const { return running_; }
  const WorldMap& world() const { return *world_; }
  const EnvConfig& config() const { return config_; }
  std::mt19937_64& rng() { return rng_; }
  const std::mt19937_64& rng() const { return rng_; }

 private:
  std::shared_ptr<const WorldMap> world_;
  EnvConfig config_;
  std::mt19937_64 rng_;
  RobotState state_;
  int step_ = 0;
  bool running_ = false;
};

}  // namespace d3qn

#endif  // D3QN_SIM_ENVIRONMENT_H_
