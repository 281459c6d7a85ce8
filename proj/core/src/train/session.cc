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

#include "d3qn/train/trainer.h"

#include <bit>
#include <chrono>
#include <fstream>
#include <numeric>

#include "d3qn/errors.h"
#include "d3qn/train/checkpoint.h"
#include "d3qn/util/atomic_file.h"
#include "d3qn/util/rng.h"

namespace d3qn {
namespace internal {

// Seed streams derived from RunConfig::seed.
enum SeedStream : std::uint64_t {
  kEnvStage1 = 1,
  kEnvStage2 = 2,
  kSensor = 3,
  kExplore = 4,
  kReplay = 5,
  kInit = 6,
};

EpisodeStats RunEpisodeImpl(Environment& env, const Agent& agent,
                            Agent* learner, const SensorSettings& sensor,
                            EpisodeRngs& rngs, ReplayBuffer* replay,
                            std::vector<RobotState>* poses) {
  if (!env.running()) throw UsageError("RunEpisode: environment is not reset");
  if (learner && !replay) throw UsageError("RunEpisode: train mode needs a replay buffer");
  const auto start = std::chrono::steady_clock::now();
  const double max_range = env.config().max_range;

  auto sense = [&](const DepthScan& raw) {
    return sensor.enabled ? CorruptScan(raw, sensor.corruption, rngs.sensor) : raw;
  };
  ObservationStack stack(max_range, sensor.stack_k);
  stack.Push(sense(env.Scan()));
  if (poses) poses->push_back(env.state());

  EpisodeStats stats;
  double loss_sum = 0.0;
  int updates = 0;
  Observation obs = stack.Current();
  while (true) {
    const double epsilon = learner ? agent.CurrentEpsilon() : 0.0;
    const ActionPair action = agent.Act(obs, epsilon, rngs.explore);
    const EnvStepResult result = env.Step(action);
    if (poses) poses->push_back(env.state());
    stack.Push(sense(result.observation));
    Observation next = stack.Current();
    stats.ret += result.reward;
    ++stats.steps;
    stats.cause = result.terminal;

    if (learner) {
      replay->Push({obs, action, static_cast<float>(result.reward), next,
                    result.terminal == Terminal::kCollision});
      learner->CountEnvStep();
      const AgentConfig& cfg = learner->config();
      if (replay->size() >= cfg.warmup &&
          learner->env_steps() % cfg.train_every == 0) {
        const TrainStats ts =
            learner->TrainStep(replay->Sample(cfg.batch_size, rngs.replay));
        loss_sum += ts.loss;
        ++updates;
      }
    }
    if (result.terminal != Terminal::kRunning) break;
    obs = std::move(next);
  }
  stats.mean_loss = updates ? loss_sum / updates : 0.0;
  stats.epsilon = learner ? agent.CurrentEpsilon() : 0.0;
  stats.env_steps = agent.env_steps();
  stats.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                     .count();
  return stats;
}

}  // namespace internal

EpisodeStats RunEpisode(Environment& env, Agent& agent, EpisodeMode mode,
                        const SensorSettings& sensor, EpisodeRngs& rngs,
                        ReplayBuffer* replay, std::vector<RobotState>* poses) {
  return internal::RunEpisodeImpl(env, agent,
                                  mode == EpisodeMode::kTrain ? &agent : nullptr,
                                  sensor, rngs, replay, poses);
}

std::uint64_t ParamsHash(const neuro::Network<float>& net) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) {
      h ^= (bits >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  for (const auto& layer : net.layers()) {
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) mix(layer.weight(i));
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) mix(layer.bias(i));
  }
  return h;
}

double MovingAverage(const std::deque<double>& recent) {
  if (recent.empty()) return 0.0;
  return std::accumulate(recent.begin(), recent.end(), 0.0) / recent.size();
}

TrainingSession::TrainingSession(RunConfig config,
                                 std::shared_ptr<const WorldMap> stage1,
                                 std::shared_ptr<const WorldMap> stage2)
    : config_(std::move(config)),
      stage1_(std::move(stage1)),
      stage2_(config_.episodes_stage2 > 0 ? std::move(stage2) : nullptr),
      env1_(stage1_, config_.env, DeriveSeed(config_.seed, internal::kEnvStage1)),
      agent_(config_.agent, config_.env.n_rays, config_.stack_k,
             DeriveSeed(config_.seed, internal::kInit)),
      replay_(config_.agent.replay_capacity, config_.env.n_rays * config_.stack_k),
      rngs_{std::mt19937_64(DeriveSeed(config_.seed, internal::kSensor)),
            std::mt19937_64(DeriveSeed(config_.seed, internal::kExplore)),
            std::mt19937_64(DeriveSeed(config_.seed, internal::kReplay))} {
  config_.Validate();
  if (config_.episodes_stage2 > 0 && !stage2_) {
    throw ConfigError("stage-2 episodes requested without a stage-2 world");
  }
  if (stage2_) {
    env2_.emplace(stage2_, config_.env, DeriveSeed(config_.seed, internal::kEnvStage2));
  }
}

int TrainingSession::current_stage() const {
  return episodes_done_ < config_.episodes_stage1 ? 1 : 2;
}

EpisodeStats TrainingSession::RunNextEpisode() {
  if (finished()) throw UsageError("TrainingSession: all episodes already ran");
  const int stage = current_stage();
  Environment& env = stage == 1 ? env1_ : *env2_;
  const std::uint64_t hash = ParamsHash(agent_.online());
  env.Reset();
  EpisodeStats stats;
  try {
    stats = RunEpisode(env, agent_, EpisodeMode::kTrain, config_.TrainSensor(),
                       rngs_, &replay_);
  } catch (const Error& e) {
    throw TrainingError("episode " + std::to_string(episodes_done_ + 1) +
                        " (stage " + std::to_string(stage) + "): " + e.what());
  }
  ++episodes_done_;
  stats.episode = episodes_done_;
  stats.stage = stage;
  stats.params_hash_start = hash;
  recent_returns_.push_back(stats.ret);
  while (static_cast<int>(recent_returns_.size()) > config_.ma_window) {
    recent_returns_.pop_front();
  }
  stats.ma_return = MovingAverage(recent_returns_);
  return stats;
}

void TrainingSession::Save(const std::filesystem::path& prefix,
                           bool with_replay) const {
  nlohmann::json session = {
      {"episodes_done", episodes_done_},
      {"stage", episodes_done_ < config_.episodes_stage1 ? 1 : 2},
      {"recent_returns", std::vector<double>(recent_returns_.begin(),
                                             recent_returns_.end())},
      {"best_ma", best_ma_},
      {"seed", config_.seed},
      {"rng_env1", SaveEngine(env1_.rng())},
      {"rng_sensor", SaveEngine(rngs_.sensor)},
      {"rng_explore", SaveEngine(rngs_.explore)},
      {"rng_replay", SaveEngine(rngs_.replay)},
  };
  if (env2_) session["rng_env2"] = SaveEngine(env2_->rng());
  SaveCheckpoint(agent_, prefix.string() + ".ckpt",
                 {{"session", session},
                  {"episode", episodes_done_},
                  {"ma_return", MovingAverage(recent_returns_)}});
  if (with_replay) {
    AtomicFile file(prefix.string() + ".replay", /*binary=*/true);
    replay_.Save(file.stream());
    file.Commit();
  }
}

void TrainingSession::Restore(const std::filesystem::path& prefix) {
  const nlohmann::json meta = LoadCheckpointInto(agent_, prefix.string() + ".ckpt");
  if (!meta.contains("session")) {
    throw LoadError("checkpoint " + prefix.string() + ".ckpt has no session state");
  }
  const nlohmann::json& s = meta.at("session");
  try {
    episodes_done_ = s.at("episodes_done").get<int>();
    recent_returns_.clear();
    for (double r : s.at("recent_returns")) recent_returns_.push_back(r);
    best_ma_ = s.at("best_ma").get<double>();
    LoadEngine(s.at("rng_env1").get<std::string>(), env1_.rng());
    if (env2_ && s.contains("rng_env2")) {
      LoadEngine(s.at("rng_env2").get<std::string>(), env2_->rng());
    }
    LoadEngine(s.at("rng_sensor").get<std::string>(), rngs_.sensor);
    LoadEngine(s.at("rng_explore").get<std::string>(), rngs_.explore);
    LoadEngine(s.at("rng_replay").get<std::string>(), rngs_.replay);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("corrupt session state: ") + e.what());
  }
  std::ifstream in(prefix.string() + ".replay", std::ios::binary);
  if (!in) throw LoadError("missing replay state " + prefix.string() + ".replay");
  replay_.Load(in);
}

}  // namespace d3qn
