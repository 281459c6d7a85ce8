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

#include "d3qn/agent/replay_buffer.h"

#include <algorithm>
#include <bit>

#include "d3qn/errors.h"
#include "d3qn/neuro/serialize.h"

namespace d3qn {

ReplayBuffer::ReplayBuffer(std::int64_t capacity, int obs_size)
    : capacity_(capacity), obs_size_(obs_size) {
  if (capacity < 1) throw ConfigError("replay capacity must be >= 1");
  if (obs_size < 1) throw ConfigError("replay observation size must be >= 1");
  obs_.resize(obs_size, capacity);
  next_obs_.resize(obs_size, capacity);
  actions_.resize(capacity);
  rewards_.resize(capacity);
  terminals_.resize(capacity);
}

void ReplayBuffer::Push(const Transition& t) {
  if (static_cast<int>(t.obs.values.size()) != obs_size_ ||
      static_cast<int>(t.next_obs.values.size()) != obs_size_) {
    throw UsageError("ReplayBuffer::Push: observation length mismatch");
  }
  if (!t.action.valid()) throw UsageError("ReplayBuffer::Push: invalid action");
  obs_.col(cursor_) =
      Eigen::Map<const Eigen::VectorXf>(t.obs.values.data(), obs_size_);
  next_obs_.col(cursor_) =
      Eigen::Map<const Eigen::VectorXf>(t.next_obs.values.data(), obs_size_);
  actions_[cursor_] = t.action;
  rewards_[cursor_] = t.reward;
  terminals_[cursor_] = t.terminal ? 1 : 0;
  cursor_ = (cursor_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

std::int64_t ReplayBuffer::OldestSlot(std::int64_t i) const {
  if (i < 0 || i >= size_) throw UsageError("ReplayBuffer: index out of range");
  const std::int64_t oldest = size_ < capacity_ ? 0 : cursor_;
  return (oldest + i) % capacity_;
}

Batch ReplayBuffer::Sample(int n, std::mt19937_64& rng) const {
  if (n < 1) throw UsageError("ReplayBuffer::Sample: n must be >= 1");
  if (size_ < n) {
    throw UsageError("ReplayBuffer::Sample: requested " + std::to_string(n) +
                     " transitions but only " + std::to_string(size_) +
                     " are stored");
  }
  // Floyd's algorithm: n distinct values from [0, size) in O(n) draws.
  std::vector<std::int64_t> picked;
  picked.reserve(n);
  for (std::int64_t j = size_ - n; j < size_; ++j) {
    std::uniform_int_distribution<std::int64_t> draw(0, j);
    const std::int64_t candidate = draw(rng);
    if (std::find(picked.begin(), picked.end(), candidate) == picked.end()) {
      picked.push_back(candidate);
    } else {
      picked.push_back(j);
    }
  }
  return Gather(picked);
}

Batch ReplayBuffer::Gather(const std::vector<std::int64_t>& slots) const {
  Batch batch;
  const auto n = static_cast<Eigen::Index>(slots.size());
  batch.obs.resize(obs_size_, n);
  batch.next_obs.resize(obs_size_, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::int64_t s = slots[j];
    if (s < 0 || s >= size_) throw UsageError("ReplayBuffer: slot out of range");
    batch.obs.col(j) = obs_.col(s);
    batch.next_obs.col(j) = next_obs_.col(s);
    batch.actions.push_back(actions_[s]);
    batch.rewards.push_back(rewards_[s]);
    batch.terminals.push_back(terminals_[s]);
    batch.indices.push_back(s);
  }
  return batch;
}

void ReplayBuffer::Save(std::ostream& out) const {
  using namespace neuro;
  WriteU64(out, static_cast<std::uint64_t>(capacity_));
  WriteU32(out, static_cast<std::uint32_t>(obs_size_));
  WriteU64(out, static_cast<std::uint64_t>(size_));
  WriteU64(out, static_cast<std::uint64_t>(cursor_));
  for (std::int64_t s = 0; s < size_; ++s) {
    for (int r = 0; r < obs_size_; ++r) {
      WriteU32(out, std::bit_cast<std::uint32_t>(obs_(r, s)));
    }
    for (int r = 0; r < obs_size_; ++r) {
      WriteU32(out, std::bit_cast<std::uint32_t>(next_obs_(r, s)));
    }
    WriteU32(out, static_cast<std::uint32_t>(actions_[s].linear_idx));
    WriteU32(out, static_cast<std::uint32_t>(actions_[s].angular_idx));
    WriteU32(out, std::bit_cast<std::uint32_t>(rewards_[s]));
    WriteU32(out, terminals_[s]);
  }
}

void ReplayBuffer::Load(std::istream& in) {
  using namespace neuro;
  const auto capacity = static_cast<std::int64_t>(ReadU64(in));
  const auto obs_size = static_cast<int>(ReadU32(in));
  if (capacity != capacity_ || obs_size != obs_size_) {
    throw LoadError("replay buffer shape mismatch");
  }
  const auto size = static_cast<std::int64_t>(ReadU64(in));
  const auto cursor = static_cast<std::int64_t>(ReadU64(in));
  if (size > capacity || cursor >= capacity || cursor < 0) {
    throw LoadError("replay buffer header is inconsistent");
  }
  for (std::int64_t s = 0; s < size; ++s) {
    for (int r = 0; r < obs_size_; ++r) obs_(r, s) = std::bit_cast<float>(ReadU32(in));
    for (int r = 0; r < obs_size_; ++r) {
      next_obs_(r, s) = std::bit_cast<float>(ReadU32(in));
    }
    actions_[s].linear_idx = static_cast<int>(ReadU32(in));
    actions_[s].angular_idx = static_cast<int>(ReadU32(in));
    if (!actions_[s].valid()) throw LoadError("replay buffer holds an invalid action");
    rewards_[s] = std::bit_cast<float>(ReadU32(in));
    terminals_[s] = static_cast<std::uint8_t>(ReadU32(in));
  }
  size_ = size;
  cursor_ = cursor;
}

}  // namespace d3qn
