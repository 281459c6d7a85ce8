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

#ifndef D3QN_NEURO_GRAD_CHECK_H_
#define D3QN_NEURO_GRAD_CHECK_H_

#include <cstdint>
#include <vector>

#include "d3qn/neuro/layer_spec.h"

namespace d3qn::neuro {

struct GradCheckOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  double step = 1e-4;          // central-difference half-width
  int batch = 2;
  int coords_per_tensor = 6;   // sampled coordinates per weight/bias/input
  // Magnitude below which the relative error is measured against this floor
  // instead of the gradient itself.
  double magnitude_floor = 1e-6;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::int64_t coordinates_checked = 0;
  // Coordinates whose +/- perturbation flipped a ReLU; excluded because the
  // central difference straddles a kink there.
  std::int64_t kink_skips = 0;
};

// Compares Backward against central finite differences on random
// parameters and inputs, in double precision. The scalar loss is a random
// projection of the network output.
GradCheckReport GradCheck(const NetworkSpec& spec,
                          const GradCheckOptions& options = {});

// Convenience overload for a plain sequential stack.
GradCheckReport GradCheck(const std::vector<LayerSpec>& layers, int input_size,
                          const GradCheckOptions& options = {});

}  // namespace d3qn::neuro

#endif  // D3QN_NEURO_GRAD_CHECK_H_
