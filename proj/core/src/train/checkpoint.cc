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

#include "d3qn/train/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "d3qn/errors.h"
#include "d3qn/neuro/serialize.h"
#include "d3qn/util/atomic_file.h"

namespace d3qn {
namespace {

using nlohmann::json;
constexpr char kMagic[8] = {'D', '3', 'Q', 'N', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kEndMarker = 0x21444E45;  // "END!"

struct Header {
  Variant variant;
  neuro::Preset preset;
  int hidden;
  int n_rays;
  int stack_k;
  neuro::NetworkSpec spec;
};

Header ReadHeader(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, 8) != 0) {
    throw LoadError("not a d3qn checkpoint (bad magic)");
  }
  const std::uint32_t version = neuro::ReadU32(in);
  if (version != kCheckpointFormatVersion) {
    throw LoadError("unsupported checkpoint format version " +
                    std::to_string(version));
  }
  Header h;
  const std::uint32_t variant = neuro::ReadU32(in);
  const std::uint32_t preset = neuro::ReadU32(in);
  if (variant > 2 || preset > 2) throw LoadError("corrupt checkpoint header");
  h.variant = static_cast<Variant>(variant);
  h.preset = static_cast<neuro::Preset>(preset);
  h.hidden = neuro::ReadI32(in);
  h.n_rays = neuro::ReadI32(in);
  h.stack_k = neuro::ReadI32(in);
  if (h.n_rays < 1 || h.stack_k < 1 || h.hidden < 0) {
    throw LoadError("corrupt checkpoint header");
  }
  h.spec = neuro::ReadNetworkSpec(in);
  return h;
}

double ReadF64(std::istream& in) { return std::bit_cast<double>(neuro::ReadU64(in)); }
void WriteF64(std::ostream& out, double v) {
  neuro::WriteU64(out, std::bit_cast<std::uint64_t>(v));
}

void ReadBody(std::istream& in, Agent& agent) {
  const auto env_steps = static_cast<std::int64_t>(neuro::ReadU64(in));
  const auto train_steps = static_cast<std::int64_t>(neuro::ReadU64(in));
  const auto next_sync = static_cast<std::int64_t>(neuro::ReadU64(in));
  const auto sync_count = static_cast<std::int64_t>(neuro::ReadU64(in));
  auto& adam = agent.adam();
  adam.config.learning_rate = ReadF64(in);
  adam.config.beta1 = ReadF64(in);
  adam.config.beta2 = ReadF64(in);
  adam.config.epsilon = ReadF64(in);
  adam.step = static_cast<std::int64_t>(neuro::ReadU64(in));
  neuro::ReadTensors(in, agent.online().layers());
  neuro::ReadTensors(in, agent.target().layers());
  neuro::ReadTensors(in, adam.m);
  neuro::ReadTensors(in, adam.v);
  if (neuro::ReadU32(in) != kEndMarker) throw LoadError("missing end marker");
  if (!agent.online().AllFinite() || !agent.target().AllFinite()) {
    throw LoadError("checkpoint holds non-finite parameters");
  }
  agent.RestoreCounters(env_steps, train_steps, next_sync, sync_count);
  agent.online().BumpVersion();
  agent.target().BumpVersion();
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint " + path.string());
  return in;
}

json ReadSidecar(const std::filesystem::path& path) {
  const std::filesystem::path sidecar = path.string() + ".json";
  std::ifstream in(sidecar);
  if (!in) return json::object();
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw LoadError("corrupt checkpoint sidecar " + sidecar.string() + ": " +
                    e.what());
  }
}

}  // namespace

json AgentConfigToJson(const AgentConfig& c) {
  return {{"variant", VariantName(c.variant)},
          {"gamma", c.gamma},
          {"epsilon_start", c.epsilon.start},
          {"epsilon_end", c.epsilon.end},
          {"epsilon_horizon", c.epsilon.horizon},
          {"target_sync_period", c.target_sync_period},
          {"batch_size", c.batch_size},
          {"warmup", c.warmup},
          {"replay_capacity", c.replay_capacity},
          {"train_every", c.train_every},
          {"huber_delta", c.huber_delta},
          {"learning_rate", c.adam.learning_rate},
          {"adam_beta1", c.adam.beta1},
          {"adam_beta2", c.adam.beta2},
          {"adam_epsilon", c.adam.epsilon},
          {"preset", neuro::PresetName(c.preset)},
          {"hidden", c.hidden}};
}

AgentConfig AgentConfigFromJson(const json& j) {
  AgentConfig c;
  try {
    if (j.contains("variant")) c.variant = ParseVariant(j.at("variant").get<std::string>());
    c.gamma = j.value("gamma", c.gamma);
    c.epsilon.start = j.value("epsilon_start", c.epsilon.start);
    c.epsilon.end = j.value("epsilon_end", c.epsilon.end);
    c.epsilon.horizon = j.value("epsilon_horizon", c.epsilon.horizon);
    c.target_sync_period = j.value("target_sync_period", c.target_sync_period);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.warmup = j.value("warmup", c.warmup);
    c.replay_capacity = j.value("replay_capacity", c.replay_capacity);
    c.train_every = j.value("train_every", c.train_every);
    c.huber_delta = j.value("huber_delta", c.huber_delta);
    c.adam.learning_rate = j.value("learning_rate", c.adam.learning_rate);
    c.adam.beta1 = j.value("adam_beta1", c.adam.beta1);
    c.adam.beta2 = j.value("adam_beta2", c.adam.beta2);
    c.adam.epsilon = j.value("adam_epsilon", c.adam.epsilon);
    if (j.contains("preset")) c.preset = neuro::ParsePreset(j.at("preset").get<std::string>());
    c.hidden = j.value("hidden", c.hidden);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad agent config: ") + e.what());
  }
  c.Validate();
  return c;
}

void SaveCheckpoint(const Agent& agent, const std::filesystem::path& path,
                    const json& metadata) {
  {
    AtomicFile file(path, /*binary=*/true);
    std::ostream& out = file.stream();
    out.write(kMagic, sizeof(kMagic));
    neuro::WriteU32(out, kCheckpointFormatVersion);
    neuro::WriteU32(out, static_cast<std::uint32_t>(agent.variant()));
    neuro::WriteU32(out, static_cast<std::uint32_t>(agent.config().preset));
    neuro::WriteI32(out, agent.config().hidden);
    neuro::WriteI32(out, agent.n_rays());
    neuro::WriteI32(out, agent.stack_k());
    neuro::WriteNetworkSpec(out, agent.online().spec());
    neuro::WriteU64(out, static_cast<std::uint64_t>(agent.env_steps()));
    neuro::WriteU64(out, static_cast<std::uint64_t>(agent.train_steps()));
    neuro::WriteU64(out, static_cast<std::uint64_t>(agent.next_sync()));
    neuro::WriteU64(out, static_cast<std::uint64_t>(agent.sync_count()));
    const auto& adam = agent.adam();
    WriteF64(out, adam.config.learning_rate);
    WriteF64(out, adam.config.beta1);
    WriteF64(out, adam.config.beta2);
    WriteF64(out, adam.config.epsilon);
    neuro::WriteU64(out, static_cast<std::uint64_t>(adam.step));
    neuro::WriteTensors(out, agent.online().layers());
    neuro::WriteTensors(out, agent.target().layers());
    neuro::WriteTensors(out, adam.m);
    neuro::WriteTensors(out, adam.v);
    neuro::WriteU32(out, kEndMarker);
    file.Commit();
  }
  json sidecar = {{"format", kCheckpointFormatVersion},
                  {"agent", AgentConfigToJson(agent.config())},
                  {"n_rays", agent.n_rays()},
                  {"stack_k", agent.stack_k()},
                  {"env_steps", agent.env_steps()},
                  {"train_steps", agent.train_steps()},
                  {"epsilon", agent.CurrentEpsilon()},
                  {"metadata", metadata}};
  WriteFileAtomic(path.string() + ".json", sidecar.dump(2) + "\n");
}

LoadedCheckpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  const Header h = ReadHeader(in);
  const json sidecar = ReadSidecar(path);
  AgentConfig config;
  if (sidecar.contains("agent")) config = AgentConfigFromJson(sidecar.at("agent"));
  config.variant = h.variant;
  config.preset = h.preset;
  config.hidden = h.hidden;
  Agent agent(config, h.n_rays, h.stack_k, /*init_seed=*/0);
  if (!(agent.online().spec() == h.spec)) {
    throw LoadError("checkpoint network layout does not match its header");
  }
  ReadBody(in, agent);
  return {std::move(agent), sidecar.value("metadata", json::object())};
}

json LoadCheckpointInto(Agent& agent, const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  const Header h = ReadHeader(in);
  if (!(agent.online().spec() == h.spec) || h.variant != agent.variant()) {
    throw LoadError("checkpoint shape mismatch: file has [" + neuro::Describe(h.spec) +
                    "], agent has [" + neuro::Describe(agent.online().spec()) + "]");
  }
  ReadBody(in, agent);
  return ReadSidecar(path).value("metadata", json::object());
}

}  // namespace d3qn
