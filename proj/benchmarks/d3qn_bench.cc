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


#include <filesystem>
#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "d3qn/agent/agent.h"
#include "d3qn/agent/replay_buffer.h"
#include "d3qn/sensor/depth_sensor.h"
#include "d3qn/sim/environment.h"
#include "d3qn/sim/world.h"

namespace d3qn {
namespace {

std::shared_ptr<const WorldMap> ComplexWorld() {
  static const auto world = std::make_shared<const WorldMap>(LoadWorldFile(
      std::filesystem::path(D3QN_SOURCE_DIR) / "worlds" / "complex.world"));
  return world;
}

void BM_RaycastScan(benchmark::State& state) {
  const auto world = ComplexWorld();
  Environment env(world, EnvConfig{}, 1);
  env.Reset();
  const RobotState pose = env.state();
  const int n_rays = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RaycastScan(*world, pose, n_rays, 1.5707963, 5.0));
  }
}
BENCHMARK(BM_RaycastScan)->Arg(64)->Arg(256);

void BM_EnvironmentStep(benchmark::State& state) {
  Environment env(ComplexWorld(), EnvConfig{}, 1);
  env.Reset();
  std::uint64_t episode = 0;
  for (auto _ : state) {
    const EnvStepResult r = env.Step(ActionPair{1, 2});
    if (r.terminal != Terminal::kRunning) env.Reset(++episode);
    benchmark::DoNotOptimize(r.reward);
  }
}
BENCHMARK(BM_EnvironmentStep);

void BM_CorruptScan(benchmark::State& state) {
  DepthScan scan;
  scan.max_range = 5.0;
  scan.ranges.assign(64, 2.5);
  std::mt19937_64 rng(1);
  const CorruptionConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(CorruptScan(scan, config, rng));
}
BENCHMARK(BM_CorruptScan);

neuro::Network<float> MakeNet(neuro::Preset preset) {
  neuro::Network<float> net(neuro::BuildQNetworkSpec(preset, true, 64, 1));
  std::mt19937_64 rng(1);
  net.InitHeUniform(rng);
  return net;
}

void BM_Forward(benchmark::State& state) {
  const auto preset = static_cast<neuro::Preset>(state.range(0));
  const neuro::Network<float> net = MakeNet(preset);
  const neuro::Matrix<float> x =
      neuro::Matrix<float>::Random(net.input_size(), state.range(1)).cwiseAbs();
  for (auto _ : state) benchmark::DoNotOptimize(net.Forward(x));
  state.SetLabel(std::string(neuro::PresetName(preset)));
}
BENCHMARK(BM_Forward)
    ->Args({static_cast<int>(neuro::Preset::kDense), 1})
    ->Args({static_cast<int>(neuro::Preset::kDense), 64})
    ->Args({static_cast<int>(neuro::Preset::kConv), 1})
    ->Args({static_cast<int>(neuro::Preset::kConv), 64});

void BM_ForwardBackward(benchmark::State& state) {
  const auto preset = static_cast<neuro::Preset>(state.range(0));
  const neuro::Network<float> net = MakeNet(preset);
  const neuro::Matrix<float> x =
      neuro::Matrix<float>::Random(net.input_size(), 64).cwiseAbs();
  const neuro::Matrix<float> g = neuro::Matrix<float>::Ones(net.output_size(), 64);
  for (auto _ : state) {
    neuro::Tape<float> tape;
    net.Forward(x, &tape);
    benchmark::DoNotOptimize(net.Backward(tape, g));
  }
  state.SetLabel(std::string(neuro::PresetName(preset)));
}
BENCHMARK(BM_ForwardBackward)
    ->Arg(static_cast<int>(neuro::Preset::kDense))
    ->Arg(static_cast<int>(neuro::Preset::kConv));

void BM_TrainStep(benchmark::State& state) {
  AgentConfig config;
  config.variant = static_cast<Variant>(state.range(0));
  config.warmup = 64;
  config.replay_capacity = 1024;
  Agent agent(config, 64, 1, 1);
  ReplayBuffer replay(config.replay_capacity, 64);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  for (int i = 0; i < 1024; ++i) {
    Transition t;
    t.obs.values.resize(64);
    t.next_obs.values.resize(64);
    for (float& v : t.obs.values) v = unit(rng);
    for (float& v : t.next_obs.values) v = unit(rng);
    t.action = ActionPair{i % kNumLinearActions, i % kNumAngularActions};
    t.reward = unit(rng);
    replay.Push(t);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(agent.TrainStep(replay.Sample(config.batch_size, rng)));
  }
  state.SetLabel(std::string(VariantName(config.variant)));
}
BENCHMARK(BM_TrainStep)
    ->Arg(static_cast<int>(Variant::kDqn))
    ->Arg(static_cast<int>(Variant::kDdqn))
    ->Arg(static_cast<int>(Variant::kD3qn));

}  // namespace
}  // namespace d3qn

BENCHMARK_MAIN();
