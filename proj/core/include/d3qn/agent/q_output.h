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

#ifndef D3QN_AGENT_Q_OUTPUT_H_
#define D3QN_AGENT_Q_OUTPUT_H_

#include <array>
#include <random>
#include <span>

#include "d3qn/neuro/network.h"
#include "d3qn/sim/kinematics.h"

namespace d3qn {

// Per-branch action values; rows of a batched Q matrix use the same order:
// two linear-velocity actions then five angular-velocity actions.
struct QOutput {
  std::array<double, kNumLinearActions> q_linear{};
  std::array<double, kNumAngularActions> q_angular{};

  friend bool operator==(const QOutput&, const QOutput&) = default;
};

struct DuelingHeads {
  double value = 0.0;
  std::array<double, kNumLinearActions> adv_linear{};
  std::array<double, kNumAngularActions> adv_angular{};
};

// Q_b(a) = V + A_b(a) - mean(A_b), the mean taken per branch.
QOutput DuelingCombine(const DuelingHeads& heads);

// Index of the largest value; ties go to the lowest index.
int ArgMax(std::span<const double> values);

// Per branch: a uniform random index with probability epsilon, otherwise the
// branch argmax. No random draws are made when epsilon is zero.
ActionPair SelectAction(const QOutput& q, double epsilon, std::mt19937_64& rng);

// Batched variants over network outputs (one column per sample). A dueling
// raw output has 8 rows [V, A_lin(2), A_ang(5)]; a direct one has the 7
// Q rows already.
neuro::Matrix<float> QFromRaw(const neuro::Matrix<float>& raw, bool dueling);
// Chain rule through QFromRaw: maps dL/dQ (7 rows) to dL/draw.
neuro::Matrix<float> RawGradFromQGrad(const neuro::Matrix<float>& q_grad,
                                      bool dueling);
QOutput QOutputFromColumn(const neuro::Matrix<float>& q, Eigen::Index column);

}  // namespace d3qn

#endif  // D3QN_AGENT_Q_OUTPUT_H_
