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

#ifndef D3QN_AGENT_REPLAY_BUFFER_H_
#define D3QN_AGENT_REPLAY_BUFFER_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <vector>

#include "d3qn/neuro/network.h"
#include "d3qn/sensor/depth_sensor.h"
#include "d3qn/sim/kinematics.h"

namespace d3qn {

struct Transition {
  Observation obs;
  ActionPair action;
  float reward = 0.0f;
  Observation next_obs;
  bool terminal = false;
};

// Column-batched transitions, one column per sample.
struct Batch {
  neuro::Matrix<float> obs;
  neuro::Matrix<float> next_obs;
  std::vector<ActionPair> actions;
  std::vector<float> rewards;
  std::vector<std::uint8_t> terminals;
  std::vector<std::int64_t> indices;  // slots in the source buffer

  int size() const { return static_cast<int>(actions.size()); }
};

// Fixed-capacity FIFO ring of transitions with observations stored densely.
class ReplayBuffer {
 public:
  ReplayBuffer(std::int64_t capacity, int obs_size);

  // Overwrites the oldest slot once full. Throws UsageError on an
  // observation of the wrong length or an invalid action.
  void Push(const Transition& t);

  // n distinct slots drawn uniformly (Floyd's algorithm). Throws UsageError
  // when fewer than n transitions are stored.
  Batch Sample(int n, std::mt19937_64& rng) const;
  Batch Gather(const std::vector<std::int64_t>& slots) const;

  // Slot index of the i-th oldest stored transition.
  std::int64_t OldestSlot(std::int64_t i) const;

  std::int64_t size() const { return size_; }
  std::int64_t capacity() const { return capacity_; }
  int obs_size() const { return obs_size_; }

  void Save(std::ostream& out) const;
  // Replaces the contents; throws LoadError on shape mismatch or truncation.
  void Load(std::istream& in);

 private:
  std::int64_t capacity_;
  int obs_size_;
  std::int64_t size_ = 0;
  std::int64_t cursor_ = 0;
  neuro::Matrix<float> obs_;
  neuro::Matrix<float> next_obs_;
  std::vector<ActionPair> actions_;
  std::vector<float> rewards_;
  std::vector<std::uint8_t> terminals_;
};

}  // namespace d3qn

#endif  // D3QN_AGENT_REPLAY_BUFFER_H_
