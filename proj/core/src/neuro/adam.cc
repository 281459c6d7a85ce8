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

#include "d3qn/neuro/adam.h"

#include <cmath>

#include "d3qn/errors.h"

namespace d3qn::neuro {

void AdamConfig::Validate() const {
  if (!(learning_rate >= 0.0)) throw ConfigError("learning_rate must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must lie in [0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
}

template <typename T>
void AdamStep(Network<T>& net, const Gradients<T>& grads, AdamState<T>& state) {
  auto& layers = net.layers();
  if (grads.size() != layers.size() || state.m.size() != layers.size() ||
      state.v.size() != layers.size()) {
    throw TrainingError("AdamStep: gradient/parameter layer count mismatch");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (grads[i].weight.rows() != layers[i].weight.rows() ||
        grads[i].weight.cols() != layers[i].weight.cols() ||
        grads[i].bias.size() != layers[i].bias.size()) {
      throw TrainingError("AdamStep: gradient shape mismatch at layer " +
                          std::to_string(i));
    }
    if (!grads[i].weight.allFinite() || !grads[i].bias.allFinite()) {
      throw TrainingError("AdamStep: non-finite gradient at layer " +
                          std::to_string(i));
    }
  }

  const AdamConfig& c = state.config;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const T b1 = static_cast<T>(c.beta1);
  const T b2 = static_cast<T>(c.beta2);
  const T lr = static_cast<T>(c.learning_rate);
  const T eps = static_cast<T>(c.epsilon);
  const T bc1 = static_cast<T>(1.0 - std::pow(c.beta1, t));
  const T bc2 = static_cast<T>(1.0 - std::pow(c.beta2, t));

  auto update = [&](auto& param, const auto& g, auto& m, auto& v) {
    m = b1 * m + (T(1) - b1) * g;
    v = b2 * v + (T(1) - b2) * g.cwiseProduct(g);
    param.array() -=
        lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps);
  };
  for (std::size_t i = 0; i < layers.size(); ++i) {
    update(layers[i].weight, grads[i].weight, state.m[i].weight,
           state.v[i].weight);
    update(layers[i].bias, grads[i].bias, state.m[i].bias, state.v[i].bias);
  }
  net.BumpVersion();
}

template void AdamStep<float>(Network<float>&, const Gradients<float>&,
                              AdamState<float>&);
template void AdamStep<double>(Network<double>&, const Gradients<double>&,
                               AdamState<double>&);

}  // namespace d3qn::neuro
