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


#include "chain_mdp.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "d3qn/agent/replay_buffer.h"
#include "d3qn/util/rng.h"

namespace d3qn::test {
namespace {

constexpr int kLast = kChainStates - 1;

double Gap(int s) { return 0.1 * (s + 1); }
int AngularTarget(int s) { return (2 * s + 1) % kNumAngularActions; }

double MeanDistance(int target) {
  double sum = 0.0;
  for (int a = 0; a < kNumAngularActions; ++a) sum += std::abs(a - target);
  return sum / kNumAngularActions;
}

double MeanLinearReward(const ChainMdp& mdp, int s) {
  double sum = 0.0;
  for (int l = 0; l < kNumLinearActions; ++l) sum += mdp.LinearReward(s, l);
  return sum / kNumLinearActions;
}

double MeanAngularReward(const ChainMdp& mdp, int s) {
  double sum = 0.0;
  for (int a = 0; a < kNumAngularActions; ++a) sum += mdp.AngularReward(s, a);
  return sum / kNumAngularActions;
}

Observation OneHot(int s) {
  Observation obs;
  obs.values.assign(kChainStates, 0.0f);
  if (s >= 0 && s < kChainStates) obs.values[s] = 1.0f;
  return obs;
}

}  // namespace

double ChainMdp::LinearReward(int s, int linear_idx) const {
  return linear_idx == 1 ? 2.0 * Gap(s) : 0.0;
}

double ChainMdp::AngularReward(int s, int angular_idx) const {
  const int target = AngularTarget(s);
  return -Gap(s) / MeanDistance(target) * std::abs(angular_idx - target);
}

BranchQTable ChainValueIteration(const ChainMdp& mdp, double tol) {
  BranchQTable q{};
  for (double change = 1.0; change > tol;) {
    BranchQTable next{};
    for (int s = 0; s < kChainStates; ++s) {
      double v_lin = 0.0;
      double v_ang = 0.0;
      if (s < kLast) {
        v_lin = *std::max_element(q[s + 1].begin(), q[s + 1].begin() + 2);
        v_ang = *std::max_element(q[s + 1].begin() + 2, q[s + 1].end());
      }
      for (int l = 0; l < kNumLinearActions; ++l) {
        next[s][l] = mdp.LinearReward(s, l) + MeanAngularReward(mdp, s) +
                     mdp.gamma * v_lin;
      }
      for (int a = 0; a < kNumAngularActions; ++a) {
        next[s][kNumLinearActions + a] = mdp.AngularReward(s, a) +
                                         MeanLinearReward(mdp, s) +
                                         mdp.gamma * v_ang;
      }
    }
    change = 0.0;
    for (int s = 0; s < kChainStates; ++s) {
      for (int i = 0; i < 7; ++i) {
        change = std::max(change, std::abs(next[s][i] - q[s][i]));
      }
    }
    q = next;
  }
  return q;
}

AgentConfig ChainAgentConfig() {
  AgentConfig c;
  c.variant = Variant::kD3qn;
  c.preset = neuro::Preset::kLinear;
  c.gamma = ChainMdp{}.gamma;
  c.epsilon = {1.0, 1.0, 0};
  c.target_sync_period = 100;
  c.batch_size = 64;
  c.warmup = 200;
  c.replay_capacity = 20000;
  c.adam.learning_rate = 3e-4;
  return c;
}

double MaxAbsError(const Agent& agent, const BranchQTable& oracle) {
  double worst = 0.0;
  for (int s = 0; s < kChainStates; ++s) {
    const QOutput q = agent.QValues(OneHot(s));
    for (int l = 0; l < kNumLinearActions; ++l) {
      worst = std::max(worst, std::abs(q.q_linear[l] - oracle[s][l]));
    }
    for (int a = 0; a < kNumAngularActions; ++a) {
      worst = std::max(worst, std::abs(q.q_angular[a] -
                                       oracle[s][kNumLinearActions + a]));
    }
  }
  return worst;
}

ChainRunResult TrainOnChain(const ChainMdp& mdp, const ChainRunSettings& settings,
                            std::uint64_t seed) {
  AgentConfig config = settings.agent;
  config.gamma = mdp.gamma;
  Agent agent(config, kChainStates, 1, DeriveSeed(seed, 0));
  ReplayBuffer replay(config.replay_capacity, kChainStates);
  std::mt19937_64 act_rng(DeriveSeed(seed, 1));
  std::mt19937_64 sample_rng(DeriveSeed(seed, 2));
  const BranchQTable oracle = ChainValueIteration(mdp);

  ChainRunResult result;
  int s = 0;
  for (std::int64_t step = 1; step <= settings.steps; ++step) {
    const Observation obs = OneHot(s);
    const ActionPair action = agent.Act(obs, agent.CurrentEpsilon(), act_rng);
    agent.CountEnvStep();
    const bool terminal = s == kLast;
    replay.Push({obs, action, static_cast<float>(mdp.Reward(s, action)),
                 OneHot(terminal ? -1 : s + 1), terminal});
    s = terminal ? 0 : s + 1;
    if (replay.size() >= config.warmup && step % config.train_every == 0) {
      agent.TrainStep(replay.Sample(config.batch_size, sample_rng));
    }
    if (step % settings.check_every == 0 || step == settings.steps) {
      const double err = MaxAbsError(agent, oracle);
      result.error_trace.push_back(err);
      if (result.first_within < 0 && err < settings.tolerance) {
        result.first_within = step;
      }
    }
  }
  result.final_error = result.error_trace.back();
  return result;
}

}  // namespace d3qn::test
