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

#include "d3qn/agent/agent.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "d3qn/errors.h"

namespace d3qn {

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kDqn:
      return "dqn";
    case Variant::kDdqn:
      return "ddqn";
    case Variant::kD3qn:
      return "d3qn";
  }
  return "unknown";
}

Variant ParseVariant(std::string_view name) {
  if (name == "dqn") return Variant::kDqn;
  if (name == "ddqn") return Variant::kDdqn;
  if (name == "d3qn") return Variant::kD3qn;
  throw ConfigError("unknown agent variant '" + std::string(name) + "'");
}

double EpsilonAt(const EpsilonSchedule& schedule, std::int64_t step) {
  if (step < 0) throw UsageError("EpsilonAt: step must be >= 0");
  if (schedule.horizon <= 0 || step >= schedule.horizon) return schedule.end;
  const double frac = static_cast<double>(step) / schedule.horizon;
  return schedule.start + frac * (schedule.end - schedule.start);
}

void AgentConfig::Validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  for (double e : {epsilon.start, epsilon.end}) {
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  }
  if (epsilon.horizon < 0) throw ConfigError("epsilon horizon must be >= 0");
  if (target_sync_period < 1) throw ConfigError("target_sync_period must be > 0");
  if (batch_size < 1) throw ConfigError("batch_size must be > 0");
  if (warmup < batch_size) throw ConfigError("warmup must be >= batch_size");
  if (replay_capacity < warmup) {
    throw ConfigError("replay_capacity must be >= warmup");
  }
  if (train_every < 1) throw ConfigError("train_every must be > 0");
  if (!(huber_delta > 0.0)) throw ConfigError("huber_delta must be > 0");
  adam.Validate();
}

double BranchTarget(std::span<const double> online_next,
                    std::span<const double> target_next, double reward,
                    double gamma, bool terminal, Variant variant) {
  if (terminal) return reward;
  if (online_next.size() != target_next.size() || target_next.empty()) {
    throw UsageError("BranchTarget: branch size mismatch");
  }
  if (UsesDoubleQ(variant)) {
    return reward + gamma * target_next[ArgMax(online_next)];
  }
  return reward + gamma * *std::max_element(target_next.begin(), target_next.end());
}

neuro::Matrix<float> DoubleQTargets(const Batch& batch,
                                    const neuro::Network<float>& online,
                                    const neuro::Network<float>& target,
                                    double gamma, Variant variant) {
  if (batch.size() == 0) throw UsageError("DoubleQTargets: empty batch");
  const bool dueling = IsDueling(variant);
  const neuro::Matrix<float> q_target =
      QFromRaw(target.Forward(batch.next_obs), dueling);
  neuro::Matrix<float> q_online;
  if (UsesDoubleQ(variant)) {
    q_online = QFromRaw(online.Forward(batch.next_obs), dueling);
  }

  neuro::Matrix<float> y(2, batch.size());
  std::array<double, kNumAngularActions> on{};
  std::array<double, kNumAngularActions> tg{};
  for (int j = 0; j < batch.size(); ++j) {
    const bool terminal = batch.terminals[j] != 0;
    const double r = batch.rewards[j];
    const int offsets[2] = {0, kNumLinearActions};
    const int widths[2] = {kNumLinearActions, kNumAngularActions};
    for (int b = 0; b < 2; ++b) {
      for (int a = 0; a < widths[b]; ++a) {
        tg[a] = q_target(offsets[b] + a, j);
        on[a] = q_online.size() ? q_online(offsets[b] + a, j) : tg[a];
      }
      y(b, j) = static_cast<float>(BranchTarget(
          std::span<const double>(on.data(), widths[b]),
          std::span<const double>(tg.data(), widths[b]), r, gamma, terminal,
          variant));
    }
  }
  return y;
}

Agent::Agent(AgentConfig config, int n_rays, int stack_k,
             std::uint64_t init_seed)
    : config_(config), n_rays_(n_rays), stack_k_(stack_k) {
  config_.Validate();
  online_ = neuro::Network<float>(neuro::BuildQNetworkSpec(
      config_.preset, IsDueling(config_.variant), n_rays, stack_k,
      config_.hidden));
  std::mt19937_64 init_rng(init_seed);
  online_.InitHeUniform(init_rng);
  target_ = online_;
  adam_ = neuro::AdamState<float>::For(online_, config_.adam);
  next_sync_ = config_.target_sync_period;
}

neuro::Matrix<float> Agent::ToNetworkInput(const neuro::Matrix<float>& obs) const {
  if (config_.preset != neuro::Preset::kConv || stack_k_ == 1) return obs;
  neuro::Matrix<float> packed(obs.rows(), obs.cols());
  for (int f = 0; f < stack_k_; ++f) {
    for (int r = 0; r < n_rays_; ++r) {
      packed.row(r * stack_k_ + f) = obs.row(f * n_rays_ + r);
    }
  }
  return packed;
}

neuro::Matrix<float> Agent::QBatch(const neuro::Network<float>& net,
                                   const neuro::Matrix<float>& obs) const {
  return QFromRaw(net.Forward(ToNetworkInput(obs)), IsDueling(config_.variant));
}

QOutput Agent::QValues(const Observation& obs) const {
  if (static_cast<int>(obs.values.size()) != obs_size()) {
    throw ConfigError("observation has " + std::to_string(obs.values.size()) +
                      " values, agent expects " + std::to_string(obs_size()));
  }
  const neuro::Matrix<float> column =
      Eigen::Map<const Eigen::VectorXf>(obs.values.data(), obs_size());
  return QOutputFromColumn(QBatch(online_, column), 0);
}

ActionPair Agent::Act(const Observation& obs, double epsilon,
                      std::mt19937_64& rng) const {
  return SelectAction(QValues(obs), epsilon, rng);
}

neuro::Gradients<float> Agent::ComputeGradients(const Batch& raw_batch,
                                                TrainStats* stats) const {
  if (raw_batch.size() == 0) throw UsageError("ComputeGradients: empty batch");
  Batch batch = raw_batch;
  batch.obs = ToNetworkInput(raw_batch.obs);
  batch.next_obs = ToNetworkInput(raw_batch.next_obs);

  const bool dueling = IsDueling(config_.variant);
  const neuro::Matrix<float> y =
      DoubleQTargets(batch, online_, target_, config_.gamma, config_.variant);

  neuro::Tape<float> tape;
  const neuro::Matrix<float> q = QFromRaw(online_.Forward(batch.obs, &tape), dueling);

  const int n = batch.size();
  const double delta = config_.huber_delta;
  const double scale = 1.0 / (2.0 * n);  // mean over transitions and branches
  neuro::Matrix<float> q_grad = neuro::Matrix<float>::Zero(q.rows(), n);
  double loss = 0.0;
  double abs_td = 0.0;
  for (int j = 0; j < n; ++j) {
    const int rows[2] = {batch.actions[j].linear_idx,
                         kNumLinearActions + batch.actions[j].angular_idx};
    for (int b = 0; b < 2; ++b) {
      const double err = static_cast<double>(q(rows[b], j)) - y(b, j);
      const double mag = std::abs(err);
      loss += mag <= delta ? 0.5 * err * err : delta * (mag - 0.5 * delta);
      abs_td += mag;
      q_grad(rows[b], j) = static_cast<float>(std::clamp(err, -delta, delta) * scale);
    }
  }
  loss *= scale;
  abs_td *= scale;
  if (!std::isfinite(loss)) {
    std::ostringstream msg;
    msg << "non-finite loss at learner step " << train_steps_ << " (variant "
        << VariantName(config_.variant) << ", batch " << n
        << ", max |q| " << q.cwiseAbs().maxCoeff() << ", max |y| "
        << y.cwiseAbs().maxCoeff() << ")";
    throw TrainingError(msg.str());
  }
  if (stats) *stats = {loss, abs_td};
  return online_.Backward(tape, RawGradFromQGrad(q_grad, dueling));
}

TrainStats Agent::TrainStep(const Batch& batch) {
  TrainStats stats;
  const neuro::Gradients<float> grads = ComputeGradients(batch, &stats);
  neuro::AdamStep(online_, grads, adam_);
  ++train_steps_;
  if (train_steps_ >= next_sync_) SyncTarget();
  return stats;
}

void Agent::SyncTarget() {
  target_ = online_;
  next_sync_ += config_.target_sync_period;
  ++sync_count_;
}

void Agent::RestoreCounters(std::int64_t env_steps, std::int64_t train_steps,
                            std::int64_t next_sync, std::int64_t sync_count) {
  env_steps_ = env_steps;
  train_steps_ = train_steps;
  next_sync_ = next_sync;
  sync_count_ = sync_count;
}

}  // namespace d3qn
