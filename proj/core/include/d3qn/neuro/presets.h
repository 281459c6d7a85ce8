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

#ifndef D3QN_NEURO_PRESETS_H_
#define D3QN_NEURO_PRESETS_H_

#include <string>
#include <string_view>

#include "d3qn/neuro/layer_spec.h"

namespace d3qn::neuro {

// kConv:   1D analogue of the three-conv trunk (len 10 /4, len 4 /2,
//          len 3 /1; 32-64-64 channels) with 512-wide FC streams.
// kDense:  in -> 128 trunk with 128-wide FC streams; fast CI preset.
// kLinear: one dense layer per head, no hidden units (tabular checks).
enum class Preset { kDense, kConv, kLinear };

std::string_view PresetName(Preset preset);
// Throws ConfigError for unknown names.
Preset ParsePreset(std::string_view name);

inline constexpr int kQOutputs = 7;  // 2 linear + 5 angular

// Q-network layout. Dueling nets have two heads, value (1 output) then
// advantage (7 outputs, linear branch first). Direct nets have a single
// 7-wide head of per-branch Q-values. `hidden` = 0 selects the preset width.
NetworkSpec BuildQNetworkSpec(Preset preset, bool dueling, int n_rays,
                              int stack_k, int hidden = 0);

int DefaultHiddenWidth(Preset preset);

}  // namespace d3qn::neuro

#endif  // D3QN_NEURO_PRESETS_H_
