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

#include "d3qn/sim/kinematics.h"

#include <cmath>

#include "d3qn/errors.h"

namespace d3qn {

double WrapAngle(double theta) {
  double wrapped = std::remainder(theta, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
  return wrapped;
}

RobotState StepRobot(const RobotState& state, double v, double omega,
                     double dt) {
  if (!(dt > 0.0)) throw UsageError("StepRobot: dt must be positive");
  RobotState next = state;
  if (omega == 0.0) {
    next.x += v * std::cos(state.theta) * dt;
    next.y += v * std::sin(state.theta) * dt;
  } else {
    const double turn_radius = v / omega;
    const double heading = state.theta + omega * dt;
    next.x += turn_radius * (std::sin(heading) - std::sin(state.theta));
    next.y -= turn_radius * (std::cos(heading) - std::cos(state.theta));
    next.theta = heading;
  }
  next.theta = WrapAngle(next.theta);
  return next;
}

RobotState StepRobot(const RobotState& state, const ActionPair& action,
                     double dt) {
  return StepRobot(state, action.linear_velocity(), action.angular_velocity(),
                   dt);
}

}  // namespace d3qn
