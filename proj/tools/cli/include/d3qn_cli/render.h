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


#ifndef D3QN_CLI_RENDER_H_
#define D3QN_CLI_RENDER_H_

#include <filesystem>
#include <string>
#include <vector>

#include "d3qn/sim/kinematics.h"
#include "d3qn/sim/world.h"

namespace d3qn::cli {

struct RenderOptions {
  double pixels_per_meter = 60.0;
  double margin_px = 20.0;
  double robot_radius = 0.2;
  bool draw_spawn_regions = true;
};

// Standalone SVG with the world's obstacles, the pose path as a polyline
// with one vertex per pose, and start/end markers. The output depends only
// on the inputs. Throws UsageError for an empty pose log.
std::string RenderTrajectorySvg(const WorldMap& world,
                                const std::vector<RobotState>& poses,
                                const RenderOptions& options = {});

// Pose logs are CSV with header "step,x,y,theta".
std::string PoseLogCsv(const std::vector<RobotState>& poses);
std::vector<RobotState> ReadPoseLogCsv(const std::filesystem::path& path);

}  // namespace d3qn::cli

#endif  // D3QN_CLI_RENDER_H_
