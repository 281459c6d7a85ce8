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

#ifndef D3QN_TRAIN_CHECKPOINT_H_
#define D3QN_TRAIN_CHECKPOINT_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "d3qn/agent/agent.h"

namespace d3qn {

inline constexpr std::uint32_t kCheckpointFormatVersion = 1;

nlohmann::json AgentConfigToJson(const AgentConfig& config);
// Missing keys keep their defaults; throws ConfigError on bad values.
AgentConfig AgentConfigFromJson(const nlohmann::json& json);

// Binary checkpoint: magic "D3QNCKPT", format version, network layout, step
// counters, Adam hyperparameters, then online, target, Adam m and Adam v
// tensors as little-endian float32 arrays in declaration order. A JSON
// sidecar "<path>.json" carries the agent config and `metadata`.
// Both files are written atomically.
void SaveCheckpoint(const Agent& agent, const std::filesystem::path& path,
                    const nlohmann::json& metadata = nlohmann::json::object());

struct LoadedCheckpoint {
  Agent agent;
  nlohmann::json metadata;  // as passed to SaveCheckpoint; empty if no sidecar
};

// Throws LoadError for missing, truncated, corrupt or version-mismatched
// files.
LoadedCheckpoint LoadCheckpoint(const std::filesystem::path& path);

// Loads parameters, optimizer state and counters into an existing agent.
// Throws LoadError when the stored network layout differs from the agent's.
nlohmann::json LoadCheckpointInto(Agent& agent, const std::filesystem::path& path);

}  // namespace d3qn

#endif  // D3QN_TRAIN_CHECKPOINT_H_
