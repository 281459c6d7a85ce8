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

#ifndef D3QN_NEURO_ADAM_H_
#define D3QN_NEURO_ADAM_H_

#include <cstdint>

#include "d3qn/neuro/network.h"

namespace d3qn::neuro {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
};

// First and second moment accumulators shaped like the network parameters.
template <typename T>
struct AdamState {
  AdamConfig config;
  Gradients<T> m;
  Gradients<T> v;
  std::int64_t step = 0;

  static AdamState For(const Network<T>& net, const AdamConfig& config) {
    return {config, net.ZeroGradients(), net.ZeroGradients(), 0};
  }
};

// Bias-corrected Adam update. Rejects non-finite or mis-shaped gradients with
// TrainingError before touching any state; bumps the network version.
template <typename T>
void AdamStep(Network<T>& net, const Gradients<T>& grads, AdamState<T>& state);

extern template void AdamStep<float>(Network<float>&, const Gradients<float>&,
                                     AdamState<float>&);
extern template void AdamStep<double>(Network<double>&,
                                      const Gradients<double>&,
                                      AdamState<double>&);

}  // namespace d3qn::neuro

#endif  // D3QN_NEURO_ADAM_H_
