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

#ifndef D3QN_TRAIN_COMPARE_H_
#define D3QN_TRAIN_COMPARE_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d3qn/train/trainer.h"

namespace d3qn {

// First 1-based episode whose moving-average return reaches `threshold`.
std::optional<int> EpisodesToThreshold(const std::vector<EpisodeStats>& curve,
                                       double threshold);

// Median with missing values ordered after every present one; nullopt when
// the median itself is missing.
std::optional<double> MedianWithMissing(std::vector<std::optional<double>> values);
double Median(std::vector<double> values);

struct CompareCell {
  Variant variant = Variant::kD3qn;
  std::uint64_t seed = 0;
  std::vector<EpisodeStats> curve;
  std::optional<int> episodes_to_threshold;
  double final_ma = 0.0;
};

struct VariantSummary {
  Variant variant = Variant::kD3qn;
  std::optional<double> median_episodes_to_threshold;  // nullopt: not reached
  double median_final_ma = 0.0;
  int reached = 0;
  int seeds = 0;
};

struct ComparisonResult {
  double threshold = 0.0;
  std::vector<CompareCell> cells;
  std::vector<VariantSummary> summaries;

  const VariantSummary& Summary(Variant v) const;
};

// Trains every (variant, seed) cell; seed i uses master seed base.seed + i for
// all variants so that environments and sensors start from the same streams.
// Cells run on up to `threads` worker threads and write to
// <output_dir>/<variant>/seed_<s>/. Writes <output_dir>/comparison.csv (curve
// columns prefixed by variant, seed) and comparison_summary.csv.
// Throws ConfigError for fewer than 2 variants or 3 seeds.
ComparisonResult CompareVariants(
    const RunConfig& base, const std::vector<Variant>& variants, int n_seeds,
    int threads = 1,
    const std::function<void(const CompareCell&)>& on_cell = {});

std::string ComparisonSummaryCsv(const ComparisonResult& result);

}  // namespace d3qn

#endif  // D3QN_TRAIN_COMPARE_H_
