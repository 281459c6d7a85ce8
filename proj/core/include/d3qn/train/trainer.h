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

#ifndef D3QN_TRAIN_TRAINER_H_
#define D3QN_TRAIN_TRAINER_H_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "d3qn/agent/agent.h"
#include "d3qn/agent/replay_buffer.h"
#include "d3qn/sensor/depth_sensor.h"
#include "d3qn/sim/environment.h"

namespace d3qn {

struct SensorSettings {
  CorruptionConfig corruption;
  bool enabled = true;
  int stack_k = 1;
};

struct RunConfig {
  std::string world_stage1;
  std::string world_stage2;  // empty: single-stage training
  int episodes_stage1 = 2000;
  int episodes_stage2 = 0;
  EnvConfig env;
  CorruptionConfig sensor;
  bool corrupt_train = true;
  bool corrupt_eval = true;
  int stack_k = 1;
  AgentConfig agent;
  std::uint64_t seed = 1;
  std::string output_dir = "runs/default";
  int checkpoint_every = 200;     // 0: final checkpoint only
  bool save_resume_state = true;  // replay buffer + RNG state with checkpoints
  int ma_window = 100;
  double threshold = 15.0;        // episodes-to-threshold on the moving average
  std::string eval_world;
  int eval_episodes = 100;
  std::uint64_t eval_seed = 424242;

  // Throws ConfigError. Does not touch the file system.
  void Validate() const;
  SensorSettings TrainSensor() const { return {sensor, corrupt_train, stack_k}; }
  SensorSettings EvalSensor() const { return {sensor, corrupt_eval, stack_k}; }
};

struct EpisodeStats {
  int episode = 0;  // 1-based across both stages
  int stage = 1;
  int steps = 0;
  double ret = 0.0;
  double ma_return = 0.0;
  Terminal cause = Terminal::kRunning;
  double mean_loss = 0.0;  // over learner updates in the episode, 0 if none
  double epsilon = 0.0;
  double wall_s = 0.0;
  std::int64_t env_steps = 0;  // cumulative after this episode
  std::uint64_t params_hash_start = 0;
};

enum class EpisodeMode { kTrain, kEval };

// Independent random streams used while an episode runs.
struct EpisodeRngs {
  std::mt19937_64 sensor;
  std::mt19937_64 explore;
  std::mt19937_64 replay;
};

// Runs one episode from the current pose of a freshly reset `env`:
// observe -> corrupt -> act -> step until terminal. Train mode pushes every
// transition to `replay`, performs a learner update every train_every env
// steps once warmup is reached, and lets the agent sync its target. Eval
// mode is greedy and never touches the agent. Only collisions are stored as
// terminal transitions; the step limit is a time-out and still bootstraps.
EpisodeStats RunEpisode(Environment& env, Agent& agent, EpisodeMode mode,
                        const SensorSettings& sensor, EpisodeRngs& rngs,
                        ReplayBuffer* replay,
                        std::vector<RobotState>* poses = nullptr);

// FNV-1a over the raw bits of every parameter.
std::uint64_t ParamsHash(const neuro::Network<float>& net);

// Mean of the trailing min(n, window) returns.
double MovingAverage(const std::deque<double>& recent);

// Two-stage curriculum trainer whose complete state (agent, replay, RNG
// streams, counters) can be checkpointed and resumed exactly.
class TrainingSession {
 public:
  TrainingSession(RunConfig config, std::shared_ptr<const WorldMap> stage1,
                  std::shared_ptr<const WorldMap> stage2);

  bool finished() const { return episodes_done_ >= total_episodes(); }
  int total_episodes() const {
    return config_.episodes_stage1 + (stage2_ ? config_.episodes_stage2 : 0);
  }
  int episodes_done() const { return episodes_done_; }
  int current_stage() const;
  double best_ma() const { return best_ma_; }
  void set_best_ma(double value) { best_ma_ = value; }

  EpisodeStats RunNextEpisode();

  const Agent& agent() const { return agent_; }
  Agent& agent() { return agent_; }
  const ReplayBuffer& replay() const { return replay_; }
  const RunConfig& config() const { return config_; }

  // Writes "<prefix>.ckpt" (+ sidecar holding the session state) and, when
  // requested, "<prefix>.replay".
  void Save(const std::filesystem::path& prefix, bool with_replay) const;
  // Restores a state written by Save; the replay file must exist.
  void Restore(const std::filesystem::path& prefix);

 private:
  RunConfig config_;
  std::shared_ptr<const WorldMap> stage1_;
  std::shared_ptr<const WorldMap> stage2_;
  Environment env1_;
  std::optional<Environment> env2_;
  Agent agent_;
  ReplayBuffer replay_;
  EpisodeRngs rngs_;
  int episodes_done_ = 0;
  std::deque<double> recent_returns_;
  double best_ma_ = -1e300;
};

// Learning-curve CSV: episode, steps, return, ma_return_100, loss_mean,
// epsilon, terminal_cause, wall_s, stage, env_steps.
std::string CurveCsvHeader();
std::string CurveCsvRow(const EpisodeStats& s);

struct TrainResult {
  std::vector<EpisodeStats> episodes;
  std::filesystem::path final_checkpoint;
};

using EpisodeCallback = std::function<void(const EpisodeStats&)>;

// Runs the curriculum described by `config`, writing into output_dir:
// curve.csv (rows appended as episodes finish, renamed from .partial at the
// end), checkpoints/ep_NNNNNN.ckpt every checkpoint_every episodes, best.ckpt,
// final.ckpt and, when save_resume_state is set, latest.{ckpt,replay}.
// With `resume`, continues from latest.* in output_dir.
TrainResult Train(const RunConfig& config, bool resume = false,
                  const EpisodeCallback& on_episode = {});

struct EvalEpisode {
  int episode = 0;
  int steps = 0;
  double ret = 0.0;
  Terminal cause = Terminal::kRunning;
};

struct EvalMetrics {
  int episodes = 0;
  double mean_return = 0.0;
  double collision_free_rate = 0.0;
  double mean_steps = 0.0;
  std::vector<EvalEpisode> per_episode;
};

// Greedy episodes with the given sensor settings; never mutates the agent.
// Episode i (0-based) resets with seed DeriveSeed(seed, 1000 + i). Throws
// UsageError for n_episodes < 1. The checkpoint overload throws LoadError
// when the stored network does not fit the sensor layout.
EvalMetrics Evaluate(const Agent& agent, std::shared_ptr<const WorldMap> world,
                     int n_episodes, std::uint64_t seed, const EnvConfig& env,
                     const SensorSettings& sensor);
EvalMetrics Evaluate(const std::filesystem::path& checkpoint,
                     std::shared_ptr<const WorldMap> world, int n_episodes,
                     std::uint64_t seed, const EnvConfig& env,
                     const SensorSettings& sensor);

// Pose log (initial pose plus one per step) of the first episode that
// Evaluate(agent, world, n, seed, ...) would run.
std::vector<RobotState> EvalTrajectory(const Agent& agent,
                                       std::shared_ptr<const WorldMap> world,
                                       std::uint64_t seed, const EnvConfig& env,
                                       const SensorSettings& sensor);

nlohmann::json EvalMetricsToJson(const EvalMetrics& metrics);

}  // namespace d3qn

#endif  // D3QN_TRAIN_TRAINER_H_
