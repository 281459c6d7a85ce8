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

#ifndef D3QN_SENSOR_DEPTH_SENSOR_H_
#define D3QN_SENSOR_DEPTH_SENSOR_H_

#include <deque>
#include <random>
#include <span>
#include <vector>

#include "d3qn/sim/environment.h"

namespace d3qn {

// Sensor corruption applied to raw raycast scans so that the learner sees
// depth as noisy and smeared as a learned monocular depth predictor would
// produce.
struct CorruptionConfig {
  double gauss_sigma = 0.05;  // fraction of max_range
  int blur_radius = 2;        // triangular kernel half-width, in rays
  double dropout_prob = 0.02;

  static CorruptionConfig Disabled() { return {0.0, 0, 0.0}; }
  bool enabled() const {
    return gauss_sigma > 0.0 || blur_radius > 0 || dropout_prob > 0.0;
  }
  void Validate() const;
};

// Integer triangular weights (r+1-|j|) for j in [-r, r].
std::vector<int> TriangularKernel(int radius);

// Blur (edge-clamped) -> additive Gaussian noise -> dropout to max_range ->
// clamp to [0, max_range]. Consumes random draws only for enabled stages.
DepthScan CorruptScan(const DepthScan& scan, const CorruptionConfig& config,
                      std::mt19937_64& rng);

struct Observation {
  std::vector<float> values;  // n_rays * stack_k entries in [0, 1]
  int stack_k = 1;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Normalizes the newest `stack_k` scans of `history` (oldest first) by
// max_range and concatenates them newest-last. Missing older frames repeat
// the oldest available one. Throws UsageError on an empty history.
Observation MakeObservation(std::span<const DepthScan> history,
                            double max_range, int stack_k);

// Rolling window of corrupted scans for one episode.
class ObservationStack {
 public:
  ObservationStack(double max_range, int stack_k);

  void Clear() { frames_.clear(); }
  void Push(DepthScan scan);
  Observation Current() const;

 private:
  double max_range_;
  int stack_k_;
  std::deque<DepthScan> frames_;
};

}  // namespace d3qn

#endif  // D3QN_SENSOR_DEPTH_SENSOR_H_
