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

#include "d3qn/agent/q_output.h"

#include <numeric>

#include "d3qn/errors.h"
#include "d3qn/neuro/presets.h"

namespace d3qn {
namespace {

template <std::size_t N>
std::array<double, N> CenterOn(double value, const std::array<double, N>& adv) {
  const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) / N;
  std::array<double, N> q;
  for (std::size_t i = 0; i < N; ++i) q[i] = value + (adv[i] - mean);
  return q;
}

template <std::size_t N>
int RandomOrGreedy(const std::array<double, N>& q, double epsilon,
                   std::mt19937_64& rng) {
  if (epsilon > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(N) - 1);
      return pick(rng);
    }
  }
  return ArgMax(q);
}

}  // namespace

QOutput DuelingCombine(const DuelingHeads& heads) {
  return {CenterOn(heads.value, heads.adv_linear),
          CenterOn(heads.value, heads.adv_angular)};
}

int ArgMax(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

ActionPair SelectAction(const QOutput& q, double epsilon, std::mt19937_64& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw UsageError("SelectAction: epsilon must lie in [0, 1]");
  }
  ActionPair action;
  action.linear_idx = RandomOrGreedy(q.q_linear, epsilon, rng);
  action.angular_idx = RandomOrGreedy(q.q_angular, epsilon, rng);
  return action;
}

neuro::Matrix<float> QFromRaw(const neuro::Matrix<float>& raw, bool dueling) {
  if (!dueling) {
    if (raw.rows() != neuro::kQOutputs) {
      throw ConfigError("direct Q network must output 7 rows");
    }
    return raw;
  }
  if (raw.rows() != neuro::kQOutputs + 1) {
    throw ConfigError("dueling Q network must output 8 rows");
  }
  neuro::Matrix<float> q(neuro::kQOutputs, raw.cols());
  const auto value = raw.row(0);
  const auto adv_lin = raw.middleRows(1, kNumLinearActions);
  const auto adv_ang = raw.middleRows(1 + kNumLinearActions, kNumAngularActions);
  const Eigen::RowVectorXf mean_lin = adv_lin.colwise().mean();
  const Eigen::RowVectorXf mean_ang = adv_ang.colwise().mean();
  for (int a = 0; a < kNumLinearActions; ++a) {
    q.row(a) = value + (adv_lin.row(a) - mean_lin);
  }
  for (int a = 0; a < kNumAngularActions; ++a) {
    q.row(kNumLinearActions + a) = value + (adv_ang.row(a) - mean_ang);
  }
  return q;
}

neuro::Matrix<float> RawGradFromQGrad(const neuro::Matrix<float>& q_grad,
                                      bool dueling) {
  if (!dueling) return q_grad;
  neuro::Matrix<float> raw(neuro::kQOutputs + 1, q_grad.cols());
  const auto g_lin = q_grad.topRows(kNumLinearActions);
  const auto g_ang = q_grad.bottomRows(kNumAngularActions);
  raw.row(0) = q_grad.colwise().sum();
  const Eigen::RowVectorXf mean_lin = g_lin.colwise().mean();
  const Eigen::RowVectorXf mean_ang = g_ang.colwise().mean();
  for (int a = 0; a < kNumLinearActions; ++a) {
    raw.row(1 + a) = g_lin.row(a) - mean_lin;
  }
  for (int a = 0; a < kNumAngularActions; ++a) {
    raw.row(1 + kNumLinearActions + a) = g_ang.row(a) - mean_ang;
  }
  return raw;
}

QOutput QOutputFromColumn(const neuro::Matrix<float>& q, Eigen::Index column) {
  QOutput out;
  for (int a = 0; a < kNumLinearActions; ++a) out.q_linear[a] = q(a, column);
  for (int a = 0; a < kNumAngularActions; ++a) {
    out.q_angular[a] = q(kNumLinearActions + a, column);
  }
  return out;
}

}  // namespace d3qn
