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

#include "d3qn/neuro/presets.h"

#include "d3qn/errors.h"

namespace d3qn::neuro {

std::string_view PresetName(Preset preset) {
  switch (preset) {
    case Preset::kDense:
      return "dense";
    case Preset::kConv:
      return "conv";
    case Preset::kLinear:
      return "linear";
  }
  return "unknown";
}

Preset ParsePreset(std::string_view name) {
  if (name == "dense") return Preset::kDense;
  if (name == "conv") return Preset::kConv;
  if (name == "linear") return Preset::kLinear;
  throw ConfigError("unknown network preset '" + std::string(name) + "'");
}

int DefaultHiddenWidth(Preset preset) {
  switch (preset) {
    case Preset::kDense:
      return 128;
    case Preset::kConv:
      return 512;
    case Preset::kLinear:
      return 0;
  }
  return 0;
}

NetworkSpec BuildQNetworkSpec(Preset preset, bool dueling, int n_rays,
                              int stack_k, int hidden) {
  if (n_rays < 1 || stack_k < 1) {
    throw ConfigError("BuildQNetworkSpec: n_rays and stack_k must be >= 1");
  }
  if (hidden <= 0) hidden = DefaultHiddenWidth(preset);
  NetworkSpec spec;
  spec.input_size = n_rays * stack_k;

  switch (preset) {
    case Preset::kLinear:
      break;
    case Preset::kDense:
      spec.trunk = {LayerSpec::Dense(spec.input_size, hidden), LayerSpec::Relu()};
      break;
    case Preset::kConv:
      spec.trunk = {LayerSpec::Conv1d(10, stack_k, 32, 4), LayerSpec::Relu(),
                    LayerSpec::Conv1d(4, 32, 64, 2), LayerSpec::Relu(),
                    LayerSpec::Conv1d(3, 64, 64, 1), LayerSpec::Relu()};
      break;
  }
  const int features = spec.TrunkOutputSize();

  auto stream = [&](int outputs) -> std::vector<LayerSpec> {
    if (preset == Preset::kLinear) return {LayerSpec::Dense(features, outputs)};
    return {LayerSpec::Dense(features, hidden), LayerSpec::Relu(),
            LayerSpec::Dense(hidden, outputs)};
  };
  if (dueling) {
    spec.heads = {stream(1), stream(kQOutputs)};
  } else {
    spec.heads = {stream(kQOutputs)};
  }
  spec.Validate();
  return spec;
}

}  // namespace d3qn::neuro
