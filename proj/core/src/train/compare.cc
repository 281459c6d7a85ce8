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

#include "d3qn/train/compare.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "d3qn/errors.h"
#include "d3qn/util/atomic_file.h"

namespace d3qn {

std::optional<int> EpisodesToThreshold(const std::vector<EpisodeStats>& curve,
                                       double threshold) {
  for (const EpisodeStats& s : curve) {
    if (s.ma_return >= threshold) return s.episode;
  }
  return std::nullopt;
}

std::optional<double> MedianWithMissing(std::vector<std::optional<double>> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  const auto& lo = values[n / 2 - 1];
  const auto& hi = values[n / 2];
  if (!lo || !hi) return std::nullopt;
  return 0.5 * (*lo + *hi);
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

const VariantSummary& ComparisonResult::Summary(Variant v) const {
  for (const VariantSummary& s : summaries) {
    if (s.variant == v) return s;
  }
  throw UsageError("no summary for variant " + std::string(VariantName(v)));
}

ComparisonResult CompareVariants(
    const RunConfig& base, const std::vector<Variant>& variants, int n_seeds,
    int threads, const std::function<void(const CompareCell&)>& on_cell) {
  if (variants.size() < 2) throw ConfigError("compare needs at least 2 variants");
  if (n_seeds < 3) throw ConfigError("compare needs at least 3 seeds");
  base.Validate();

  ComparisonResult result;
  result.threshold = base.threshold;
  for (Variant v : variants) {
    for (int s = 0; s < n_seeds; ++s) {
      CompareCell cell;
      cell.variant = v;
      cell.seed = base.seed + static_cast<std::uint64_t>(s);
      result.cells.push_back(std::move(cell));
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < result.cells.size(); i = next++) {
      CompareCell& cell = result.cells[i];
      try {
        RunConfig config = base;
        config.agent.variant = cell.variant;
        config.seed = cell.seed;
        config.save_resume_state = false;
        config.output_dir = (std::filesystem::path(base.output_dir) /
                             std::string(VariantName(cell.variant)) /
                             ("seed_" + std::to_string(cell.seed)))
                                .string();
        cell.curve = Train(config).episodes;
        cell.episodes_to_threshold = EpisodesToThreshold(cell.curve, base.threshold);
        cell.final_ma = cell.curve.empty() ? 0.0 : cell.curve.back().ma_return;
        if (on_cell) {
          std::lock_guard<std::mutex> lock(mu);
          on_cell(cell);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = result.cells.size();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, result.cells.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (Variant v : variants) {
    VariantSummary summary;
    summary.variant = v;
    std::vector<std::optional<double>> hits;
    std::vector<double> finals;
    for (const CompareCell& cell : result.cells) {
      if (cell.variant != v) continue;
      ++summary.seeds;
      if (cell.episodes_to_threshold) ++summary.reached;
      hits.push_back(cell.episodes_to_threshold
                         ? std::optional<double>(*cell.episodes_to_threshold)
                         : std::nullopt);
      finals.push_back(cell.final_ma);
    }
    summary.median_episodes_to_threshold = MedianWithMissing(hits);
    summary.median_final_ma = Median(finals);
    result.summaries.push_back(summary);
  }

  std::ostringstream combined;
  combined << "variant,seed," << CurveCsvHeader();
  for (const CompareCell& cell : result.cells) {
    for (const EpisodeStats& s : cell.curve) {
      combined << VariantName(cell.variant) << ',' << cell.seed << ',' << CurveCsvRow(s);
    }
  }
  const std::filesystem::path out_dir = base.output_dir;
  WriteFileAtomic(out_dir / "comparison.csv", combined.str());
  WriteFileAtomic(out_dir / "comparison_summary.csv", ComparisonSummaryCsv(result));
  return result;
}

std::string ComparisonSummaryCsv(const ComparisonResult& result) {
  std::ostringstream out;
  out << "variant,seeds,reached,median_episodes_to_threshold,median_final_ma_return\n";
  for (const VariantSummary& s : result.summaries) {
    out << VariantName(s.variant) << ',' << s.seeds << ',' << s.reached << ',';
    if (s.median_episodes_to_threshold) {
      out << *s.median_episodes_to_threshold;
    } else {
      out << "not reached";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", s.median_final_ma);
    out << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace d3qn
