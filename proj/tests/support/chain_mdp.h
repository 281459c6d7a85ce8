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


#ifndef D3QN_TESTS_SUPPORT_CHAIN_MDP_H_
#define D3QN_TESTS_SUPPORT_CHAIN_MDP_H_

#include <array>
#include <cstdint>
#include <vector>

#include "d3qn/agent/agent.h"

namespace d3qn::test {

// Five-state deterministic chain: every action moves s -> s + 1 and acting
// in the last state ends the episode. The reward splits into a linear-branch
// part and an angular-branch part whose max-minus-mean gaps agree per state,
// so both branch tables share one state value and a dueling net can fit them
// exactly.
inline constexpr int kChainStates = 5;

struct ChainMdp {
  double gamma = 0.9;

  double LinearReward(int s, int linear_idx) const;
  double AngularReward(int s, int angular_idx) const;
  double Reward(int s, const ActionPair& a) const {
    return LinearReward(s, a.linear_idx) + AngularReward(s, a.angular_idx);
  }
};

// Per-branch action values, linear branch first (7 per state).
using BranchQTable = std::array<std::array<double, 7>, kChainStates>;

// Fixed point of the per-branch Bellman operator when the other branch acts
// uniformly at random, found by plain value iteration in double.
BranchQTable ChainValueIteration(const ChainMdp& mdp, double tol = 1e-14);

// Learner configuration the chain checks use: linear d3qn, uniform random
// behaviour, one update per step.
AgentConfig ChainAgentConfig();

struct ChainRunSettings {
  std::int64_t steps = 20000;
  std::int64_t check_every = 500;
  double tolerance = 0.05;
  AgentConfig agent = ChainAgentConfig();
};

struct ChainRunResult {
  double final_error = 0.0;          // max |Q - Q*| after the last step
  std::int64_t first_within = -1;    // first checked step under tolerance
  std::vector<double> error_trace;   // one entry per check
};

// Trains a fresh agent on the chain for `settings.steps` environment steps.
ChainRunResult TrainOnChain(const ChainMdp& mdp, const ChainRunSettings& settings,
                            std::uint64_t seed);

double MaxAbsError(const Agent& agent, const BranchQTable& oracle);

}  // namespace d3qn::test

#endif  // D3QN_TESTS_SUPPORT_CHAIN_MDP_H_
