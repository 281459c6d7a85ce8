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

#ifndef D3QN_SIM_KINEMATICS_H_
#define D3QN_SIM_KINEMATICS_H_

#include <array>
#include <numbers>

namespace d3qn {

inline constexpr int kNumLinearActions = 2;
inline constexpr int kNumAngularActions = 5;

// Commanded velocity tables: m/s and rad/s.
inline constexpr std::array<double, kNumLinearActions> kLinearVelocities = {
    0.2, 0.4};
inline constexpr std::array<double, kNumAngularActions> kAngularVelocities = {
    std::numbers::pi / 6, std::numbers::pi / 12, 0.0, -std::numbers::pi / 12,
    -std::numbers::pi / 6};

struct ActionPair {
  int linear_idx = 0;
  int angular_idx = 0;

  double linear_velocity() const { return kLinearVelocities.at(linear_idx); }
  double angular_velocity() const { return kAngularVelocities.at(angular_idx); }
  bool valid() const {
    return linear_idx >= 0 && linear_idx < kNumLinearActions &&
           angular_idx >= 0 && angular_idx < kNumAngularActions;
  }
  friend bool operator==(const ActionPair&, const ActionPair&) = default;
};

// Planar pose of a disc robot; theta stays in (-pi, pi].
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double radius = 0.2;

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

// Wraps an angle into (-pi, pi].
double WrapAngle(double theta);

// Exact unicycle integration over dt with constant (v, omega): straight line
// when omega is zero, otherwise a circular arc of radius v / omega.
RobotState StepRobot(const RobotState& state, double v, double omega,
                     double dt);
RobotState StepRobot(const RobotState& state, const ActionPair& action,
                     double dt);

}  // namespace d3qn

#endif  // D3QN_SIM_KINEMATICS_H_
