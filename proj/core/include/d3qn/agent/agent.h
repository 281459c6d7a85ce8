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

#ifndef D3QN_AGENT_AGENT_H_
#define D3QN_AGENT_AGENT_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "d3qn/agent/q_output.h"
#include "d3qn/agent/replay_buffer.h"
#include "d3qn/neuro/adam.h"
#include "d3qn/neuro/network.h"
#include "d3qn/neuro/presets.h"
#include "d3qn/sensor/depth_sensor.h"

namespace d3qn {

// dqn: single Q stream, max over the target net.
// ddqn: single Q stream, online argmax evaluated by the target net.
// d3qn: dueling value/advantage streams with the ddqn target.
enum class Variant { kDqn, kDdqn, kD3qn };

std::string_view VariantName(Variant v);
Variant ParseVariant(std::string_view name);
inline bool IsDueling(Variant v) { return v == Variant::kD3qn; }
inline bool UsesDoubleQ(Variant v) { return v != Variant::kDqn; }

struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  std::int64_t horizon = 20000;
};

// Linear interpolation start -> end over `horizon` steps, then held at end.
double EpsilonAt(const EpsilonSchedule& schedule, std::int64_t step);

struct AgentConfig {
  Variant variant = Variant::kD3qn;
  double gamma = 0.99;
  EpsilonSchedule epsilon;
  std::int64_t target_sync_period = 2000;  // learner updates between syncs
  int batch_size = 64;
  std::int64_t warmup = 1000;              // transitions before learning
  std::int64_t replay_capacity = 50000;
  int train_every = 1;                     // env steps per learner update
  double huber_delta = 1.0;
  neuro::AdamConfig adam;
  neuro::Preset preset = neuro::Preset::kDense;
  int hidden = 0;                          // 0: preset default width

  void Validate() const;
};

// Bootstrap target for one branch. Terminal: r. Double-Q: r + gamma *
// target_next[argmax(online_next)]. Otherwise: r + gamma * max(target_next).
double BranchTarget(std::span<const double> online_next,
                    std::span<const double> target_next, double reward,
                    double gamma, bool terminal, Variant variant);

// Per-branch targets for a batch: row 0 linear, row 1 angular. The networks
// must already take `batch.next_obs` rows as input.
neuro::Matrix<float> DoubleQTargets(const Batch& batch,
                                    const neuro::Network<float>& online,
                                    const neuro::Network<float>& target,
                                    double gamma, Variant variant);

struct TrainStats {
  double loss = 0.0;
  double mean_abs_td = 0.0;
};

// Owns the online/target networks, the optimizer state and the step
// counters. Exploration and replay randomness come from the caller.
class Agent {
 public:
  Agent(AgentConfig config, int n_rays, int stack_k, std::uint64_t init_seed);

  const AgentConfig& config() const { return config_; }
  Variant variant() const { return config_.variant; }
  int n_rays() const { return n_rays_; }
  int stack_k() const { return stack_k_; }
  int obs_size() const { return n_rays_ * stack_k_; }

  QOutput QValues(const Observation& obs) const;
  // Q rows (7 x batch) of `net` for observation columns.
  neuro::Matrix<float> QBatch(const neuro::Network<float>& net,
                              const neuro::Matrix<float>& obs) const;
  ActionPair Act(const Observation& obs, double epsilon,
                 std::mt19937_64& rng) const;

  // Loss and parameter gradients for a batch. Only the taken action's Q in
  // each branch receives gradient. Throws TrainingError on a non-finite loss.
  neuro::Gradients<float> ComputeGradients(const Batch& batch,
                                           TrainStats* stats) const;
  // One Adam update on `batch`; advances the learner-step counter and syncs
  // the target when the schedule says so.
  TrainStats TrainStep(const Batch& batch);
  void SyncTarget();

  double CurrentEpsilon() const { return EpsilonAt(config_.epsilon, env_steps_); }
  void CountEnvStep() { ++env_steps_; }

  std::int64_t env_steps() const { return env_steps_; }
  std::int64_t train_steps() const { return train_steps_; }
  std::int64_t next_sync() const { return next_sync_; }
  std::int64_t sync_count() const { return sync_count_; }
  void RestoreCounters(std::int64_t env_steps, std::int64_t train_steps,
                       std::int64_t next_sync, std::int64_t sync_count);

  neuro::Network<float>& online() { return online_; }
  const neuro::Network<float>& online() const { return online_; }
  neuro::Network<float>& target() { return target_; }
  const neuro::Network<float>& target() const { return target_; }
  neuro::AdamState<float>& adam() { return adam_; }
  const neuro::AdamState<float>& adam() const { return adam_; }

  // Reorders frame-major observation columns into the layout the network
  // expects (position-major for stacked conv input).
  neuro::Matrix<float> ToNetworkInput(const neuro::Matrix<float>& obs) const;

 private:
  AgentConfig config_;
  int n_rays_;
  int stack_k_;
  neuro::Network<float> online_;
  neuro::Network<float> target_;
  neuro::AdamState<float> adam_;
  std::int64_t env_steps_ = 0;
  std::int64_t train_steps_ = 0;
  std::int64_t next_sync_ = 0;
  std::int64_t sync_count_ = 0;
};

}  // namespace d3qn

#endif  // D3QN_AGENT_AGENT_H_
