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

#include "d3qn/neuro/grad_check.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "d3qn/errors.h"
#include "d3qn/neuro/network.h"

namespace d3qn::neuro {
namespace {

using Net = Network<double>;
using Mat = Matrix<double>;

struct Probe {
  double loss = 0.0;
  std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>> relu_masks;
};

Probe Evaluate(const Net& net, const Mat& input, const Mat& projection) {
  Tape<double> tape;
  const Mat out = net.Forward(input, &tape);
  Probe probe;
  probe.loss = (out.array() * projection.array()).sum();
  for (std::size_t i = 0; i < net.num_layers(); ++i) {
    if (net.layer_spec(i).kind == LayerKind::kRelu) {
      probe.relu_masks.push_back(tape.layer_inputs[i].array() > 0.0);
    }
  }
  return probe;
}

bool SameMasks(const Probe& a, const Probe& b) {
  for (std::size_t i = 0; i < a.relu_masks.size(); ++i) {
    if ((a.relu_masks[i] != b.relu_masks[i]).any()) return false;
  }
  return true;
}

std::vector<Eigen::Index> SampleIndices(Eigen::Index size, int count,
                                        std::mt19937_64& rng) {
  std::vector<Eigen::Index> all(size);
  for (Eigen::Index i = 0; i < size; ++i) all[i] = i;
  if (size <= count) return all;
  std::vector<Eigen::Index> picked;
  std::sample(all.begin(), all.end(), std::back_inserter(picked), count, rng);
  return picked;
}

}  // namespace

GradCheckReport GradCheck(const NetworkSpec& spec,
                          const GradCheckOptions& options) {
  if (options.trials < 1) throw UsageError("GradCheck: trials must be >= 1");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double h = options.step;

  GradCheckReport report;
  for (int trial = 0; trial < options.trials; ++trial) {
    Net net(spec);
    net.InitHeUniform(rng);
    for (auto& layer : net.layers()) {
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i) {
        layer.bias(i) = 0.1 * uniform(rng);
      }
    }
    Mat input(spec.input_size, options.batch);
    for (Eigen::Index i = 0; i < input.size(); ++i) input(i) = uniform(rng);
    Mat projection(net.output_size(), options.batch);
    for (Eigen::Index i = 0; i < projection.size(); ++i) {
      projection(i) = normal(rng);
    }

    Tape<double> tape;
    net.Forward(input, &tape);
    Mat input_grad;
    const Gradients<double> analytic = net.Backward(tape, projection, &input_grad);

    auto check = [&](double& slot, double expected, auto&& evaluate) {
      const double saved = slot;
      slot = saved + h;
      const Probe plus = evaluate();
      slot = saved - h;
      const Probe minus = evaluate();
      slot = saved;
      if (!SameMasks(plus, minus)) {
        ++report.kink_skips;
        return;
      }
      const double numeric = (plus.loss - minus.loss) / (2.0 * h);
      const double scale = std::max({std::abs(expected), std::abs(numeric),
                                     options.magnitude_floor});
      report.max_relative_error =
          std::max(report.max_relative_error, std::abs(expected - numeric) / scale);
      ++report.coordinates_checked;
    };
    auto evaluate = [&] { return Evaluate(net, input, projection); };

    for (std::size_t l = 0; l < net.num_layers(); ++l) {
      auto& params = net.layers()[l];
      for (Eigen::Index i :
           SampleIndices(params.weight.size(), options.coords_per_tensor, rng)) {
        // The parameter is mutated in place; bump the version so the
        // evaluation never reuses state recorded before the perturbation.
        net.BumpVersion();
        check(params.weight(i), analytic[l].weight(i), evaluate);
      }
      for (Eigen::Index i :
           SampleIndices(params.bias.size(), options.coords_per_tensor, rng)) {
        net.BumpVersion();
        check(params.bias(i), analytic[l].bias(i), evaluate);
      }
    }
    for (Eigen::Index i :
         SampleIndices(input.size(), options.coords_per_tensor, rng)) {
      check(input(i), input_grad(i), evaluate);
    }
  }
  return report;
}

GradCheckReport GradCheck(const std::vector<LayerSpec>& layers, int input_size,
                          const GradCheckOptions& options) {
  NetworkSpec spec;
  spec.input_size = input_size;
  spec.trunk = layers;
  return GradCheck(spec, options);
}

}  // namespace d3qn::neuro
