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

#include "d3qn/neuro/layer_spec.h"

#include <sstream>

#include "d3qn/errors.h"

namespace d3qn::neuro {

int LayerOutputSize(const LayerSpec& layer, int input_size) {
  switch (layer.kind) {
    case LayerKind::kRelu:
      return input_size;
    case LayerKind::kDense:
      if (layer.in <= 0 || layer.out <= 0) {
        throw ConfigError("dense layer needs positive in/out sizes");
      }
      if (layer.in != input_size) {
        throw ConfigError("dense layer expects " + std::to_string(layer.in) +
                          " inputs, got " + std::to_string(input_size));
      }
      return layer.out;
    case LayerKind::kConv1d: {
      if (layer.filter_len <= 0 || layer.in_ch <= 0 || layer.out_ch <= 0) {
        throw ConfigError("conv1d layer needs positive filter and channels");
      }
      if (layer.stride < 1) throw ConfigError("conv1d stride must be >= 1");
      if (input_size % layer.in_ch != 0) {
        throw ConfigError("conv1d input of " + std::to_string(input_size) +
                          " features is not a multiple of " +
                          std::to_string(layer.in_ch) + " channels");
      }
      const int length = input_size / layer.in_ch;
      if (length < layer.filter_len) {
        throw ConfigError("conv1d input length " + std::to_string(length) +
                          " is shorter than filter " +
                          std::to_string(layer.filter_len));
      }
      const int out_len = (length - layer.filter_len) / layer.stride + 1;
      return out_len * layer.out_ch;
    }
  }
  throw ConfigError("unknown layer kind");
}

int StackOutputSize(const std::vector<LayerSpec>& layers, int input_size) {
  int size = input_size;
  for (const LayerSpec& layer : layers) size = LayerOutputSize(layer, size);
  return size;
}

std::string Describe(const LayerSpec& layer) {
  std::ostringstream out;
  switch (layer.kind) {
    case LayerKind::kRelu:
      out << "relu";
      break;
    case LayerKind::kDense:
      out << "dense(" << layer.in << "->" << layer.out << ")";
      break;
    case LayerKind::kConv1d:
      out << "conv1d(len " << layer.filter_len << ", " << layer.in_ch << "->"
          << layer.out_ch << ", stride " << layer.stride << ")";
      break;
  }
  return out.str();
}

int NetworkSpec::TrunkOutputSize() const {
  return StackOutputSize(trunk, input_size);
}

std::vector<int> NetworkSpec::HeadOutputSizes() const {
  const int trunk_out = TrunkOutputSize();
  std::vector<int> sizes;
  for (const auto& head : heads) sizes.push_back(StackOutputSize(head, trunk_out));
  return sizes;
}

int NetworkSpec::OutputSize() const {
  if (heads.empty()) return TrunkOutputSize();
  int total = 0;
  for (int s : HeadOutputSizes()) total += s;
  return total;
}

void NetworkSpec::Validate() const {
  if (input_size <= 0) throw ConfigError("network input size must be > 0");
  for (const auto& head : heads) {
    if (head.empty()) throw ConfigError("network head has no layers");
  }
  (void)OutputSize();
}

std::string Describe(const NetworkSpec& spec) {
  std::ostringstream out;
  out << "in " << spec.input_size;
  for (const LayerSpec& layer : spec.trunk) out << " | " << Describe(layer);
  for (std::size_t h = 0; h < spec.heads.size(); ++h) {
    out << " || head " << h << ":";
    for (const LayerSpec& layer : spec.heads[h]) out << " " << Describe(layer);
  }
  return out.str();
}

}  // namespace d3qn::neuro
