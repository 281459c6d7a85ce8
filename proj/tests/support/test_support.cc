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


#include "test_support.h"

#include <atomic>
#include <cmath>
#include <unistd.h>

namespace d3qn::test {

std::filesystem::path SourceDir() { return D3QN_SOURCE_DIR; }

std::filesystem::path WorldPath(const std::string& name) {
  return SourceDir() / "worlds" / name;
}

std::filesystem::path ScratchDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("d3qn_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

WorldMap EmptyRoom(double side) {
  const double h = side / 2;
  const double s = std::min(1.0, h / 2);
  return WorldMap::FromParts("empty", Box{{-h, -h}, {h, h}}, {},
                             {Box{{-s, -s}, {s, s}}});
}

WorldMap TinyRoom() {
  return WorldMap::FromParts("tiny", Box{{-0.3, -0.3}, {0.3, 0.3}}, {},
                             {Box{{-1e-3, -1e-3}, {1e-3, 1e-3}}});
}

RobotState EulerIntegrate(const RobotState& start, double v, double omega,
                          double dt, int n) {
  RobotState s = start;
  const double h = dt / n;
  for (int i = 0; i < n; ++i) {
    s.x += v * std::cos(s.theta) * h;
    s.y += v * std::sin(s.theta) * h;
    s.theta += omega * h;
  }
  return s;
}

Agent FixedPolicyAgent(const ActionPair& action, int n_rays) {
  AgentConfig config;
  config.variant = Variant::kDqn;
  config.preset = neuro::Preset::kLinear;
  Agent agent(config, n_rays, 1, 1);
  for (auto* net : {&agent.online(), &agent.target()}) {
    auto& layer = net->layers().back();
    layer.weight.setZero();
    layer.bias.setZero();
    layer.bias(action.linear_idx) = 1.0f;
    layer.bias(kNumLinearActions + action.angular_idx) = 1.0f;
  }
  return agent;
}

}  // namespace d3qn::test
