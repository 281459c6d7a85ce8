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


#include <numeric>

#include <gtest/gtest.h>

#include "chain_mdp.h"

namespace d3qn::test {
namespace {

TEST(ChainOracleTest, LastStateIsImmediateReward) {
  const BranchQTable q = ChainValueIteration(ChainMdp{});
  const double expected[7] = {-0.5, 0.5, -0.5, -0.25, 0.0, 0.25, 0.5};
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(q[4][i], expected[i], 1e-12) << i;
}

TEST(ChainOracleTest, BackupMatchesHandArithmetic) {
  const BranchQTable q = ChainValueIteration(ChainMdp{});
  // 0.8 linear reward, -0.4 mean angular reward, 0.9 * 0.5 bootstrap.
  EXPECT_NEAR(q[3][1], 0.85, 1e-12);
  EXPECT_NEAR(q[3][0], 0.05, 1e-12);
}

TEST(ChainOracleTest, BranchMeansAgreeInEveryState) {
  const BranchQTable q = ChainValueIteration(ChainMdp{});
  for (int s = 0; s < kChainStates; ++s) {
    const double lin = (q[s][0] + q[s][1]) / 2.0;
    const double ang = std::accumulate(q[s].begin() + 2, q[s].end(), 0.0) / 5.0;
    EXPECT_NEAR(lin, ang, 1e-12) << "state " << s;
  }
}

TEST(ChainTrainingTest, LinearDuelingAgentReachesOracle) {
  const ChainRunResult r = TrainOnChain(ChainMdp{}, ChainRunSettings{}, 1);
  EXPECT_GT(r.first_within, 0);
  EXPECT_LT(r.final_error, 0.1);
}

}  // namespace
}  // namespace d3qn::test
