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

#include "d3qn/sensor/depth_sensor.h"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "d3qn/errors.h"

namespace d3qn {

void CorruptionConfig::Validate() const {
  if (!(gauss_sigma >= 0.0)) throw ConfigError("gauss_sigma must be >= 0");
  if (blur_radius < 0) throw ConfigError("blur_radius must be >= 0");
  if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) {
    throw ConfigError("dropout_prob must lie in [0, 1)");
  }
}

std::vector<int> TriangularKernel(int radius) {
  std::vector<int> weights;
  for (int j = -radius; j <= radius; ++j) weights.push_back(radius + 1 - std::abs(j));
  return weights;
}

DepthScan CorruptScan(const DepthScan& scan, const CorruptionConfig& config,
                      std::mt19937_64& rng) {
  DepthScan out = scan;
  const int n = static_cast<int>(scan.ranges.size());
  const double max_range = scan.max_range;

  if (config.blur_radius > 0 && n > 0) {
    const std::vector<int> kernel = TriangularKernel(config.blur_radius);
    int total = 0;
    for (int w : kernel) total += w;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = -config.blur_radius; j <= config.blur_radius; ++j) {
        const int src = std::clamp(i + j, 0, n - 1);
        acc += kernel[j + config.blur_radius] * scan.ranges[src];
      }
      out.ranges[i] = acc / total;
    }
  }
  if (config.gauss_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, config.gauss_sigma * max_range);
    for (double& r : out.ranges) r += noise(rng);
  }
  if (config.dropout_prob > 0.0) {
    std::bernoulli_distribution drop(config.dropout_prob);
    for (double& r : out.ranges) {
      if (drop(rng)) r = max_range;
    }
  }
  for (double& r : out.ranges) r = std::clamp(r, 0.0, max_range);
  return out;
}

Observation MakeObservation(std::span<const DepthScan> history,
                            double max_range, int stack_k) {
  if (history.empty()) throw UsageError("MakeObservation: empty history");
  if (stack_k < 1) throw UsageError("MakeObservation: stack_k must be >= 1");
  if (!(max_range > 0.0)) throw UsageError("MakeObservation: max_range <= 0");

  const int available = static_cast<int>(history.size());
  Observation obs;
  obs.stack_k = stack_k;
  obs.values.reserve(history.back().ranges.size() * stack_k);
  for (int slot = 0; slot < stack_k; ++slot) {
    // Slot stack_k - 1 is the newest frame.
    const int from_newest = stack_k - 1 - slot;
    const int index = std::max(0, available - 1 - from_newest);
    for (double r : history[index].ranges) {
      obs.values.push_back(
          static_cast<float>(std::clamp(r / max_range, 0.0, 1.0)));
    }
  }
  return obs;
}

ObservationStack::ObservationStack(double max_range, int stack_k)
    : max_range_(max_range), stack_k_(stack_k) {
  if (stack_k < 1) throw ConfigError("stack_k must be >= 1");
}

void ObservationStack::Push(DepthScan scan) {
  frames_.push_back(std::move(scan));
  while (static_cast<int>(frames_.size()) > stack_k_) frames_.pop_front();
}

Observation ObservationStack::Current() const {
  const std::vector<DepthScan> frames(frames_.begin(), frames_.end());
  return MakeObservation(frames, max_range_, stack_k_);
}

}  // namespace d3qn
