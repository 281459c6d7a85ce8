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

#include "d3qn/neuro/serialize.h"

#include <array>
#include <bit>

#include "d3qn/errors.h"

namespace d3qn::neuro {
namespace {

template <typename U>
void WriteLE(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U ReadLE(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw LoadError("unexpected end of file");
  }
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(bytes[i]) << (8 * i);
  }
  return value;
}

void WriteLayer(std::ostream& out, const LayerSpec& layer) {
  WriteU32(out, static_cast<std::uint32_t>(layer.kind));
  for (int v : {layer.filter_len, layer.in_ch, layer.out_ch, layer.stride,
                layer.in, layer.out}) {
    WriteI32(out, v);
  }
}

LayerSpec ReadLayer(std::istream& in) {
  LayerSpec layer;
  const std::uint32_t kind = ReadU32(in);
  if (kind > static_cast<std::uint32_t>(LayerKind::kRelu)) {
    throw LoadError("unknown layer kind " + std::to_string(kind));
  }
  layer.kind = static_cast<LayerKind>(kind);
  layer.filter_len = ReadI32(in);
  layer.in_ch = ReadI32(in);
  layer.out_ch = ReadI32(in);
  layer.stride = ReadI32(in);
  layer.in = ReadI32(in);
  layer.out = ReadI32(in);
  return layer;
}

constexpr std::uint32_t kMaxLayers = 1024;

template <typename Derived>
void WriteFloats(std::ostream& out, const Eigen::DenseBase<Derived>& values) {
  WriteU64(out, static_cast<std::uint64_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    WriteLE(out, std::bit_cast<std::uint32_t>(values.derived()(i)));
  }
}

template <typename Derived>
void ReadFloats(std::istream& in, Eigen::DenseBase<Derived>& values) {
  const std::uint64_t count = ReadU64(in);
  if (count != static_cast<std::uint64_t>(values.size())) {
    throw LoadError("tensor size mismatch: file has " + std::to_string(count) +
                    " values, network expects " + std::to_string(values.size()));
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values.derived()(i) = std::bit_cast<float>(ReadLE<std::uint32_t>(in));
  }
}

}  // namespace

void WriteU32(std::ostream& out, std::uint32_t value) { WriteLE(out, value); }
void WriteU64(std::ostream& out, std::uint64_t value) { WriteLE(out, value); }
void WriteI32(std::ostream& out, std::int32_t value) {
  WriteLE(out, static_cast<std::uint32_t>(value));
}
std::uint32_t ReadU32(std::istream& in) { return ReadLE<std::uint32_t>(in); }
std::uint64_t ReadU64(std::istream& in) { return ReadLE<std::uint64_t>(in); }
std::int32_t ReadI32(std::istream& in) {
  return static_cast<std::int32_t>(ReadLE<std::uint32_t>(in));
}

void WriteNetworkSpec(std::ostream& out, const NetworkSpec& spec) {
  WriteI32(out, spec.input_size);
  WriteU32(out, static_cast<std::uint32_t>(spec.trunk.size()));
  for (const LayerSpec& layer : spec.trunk) WriteLayer(out, layer);
  WriteU32(out, static_cast<std::uint32_t>(spec.heads.size()));
  for (const auto& head : spec.heads) {
    WriteU32(out, static_cast<std::uint32_t>(head.size()));
    for (const LayerSpec& layer : head) WriteLayer(out, layer);
  }
}

NetworkSpec ReadNetworkSpec(std::istream& in) {
  NetworkSpec spec;
  spec.input_size = ReadI32(in);
  const std::uint32_t trunk = ReadU32(in);
  if (trunk > kMaxLayers) throw LoadError("implausible trunk layer count");
  for (std::uint32_t i = 0; i < trunk; ++i) spec.trunk.push_back(ReadLayer(in));
  const std::uint32_t heads = ReadU32(in);
  if (heads > kMaxLayers) throw LoadError("implausible head count");
  for (std::uint32_t h = 0; h < heads; ++h) {
    const std::uint32_t n = ReadU32(in);
    if (n > kMaxLayers) throw LoadError("implausible head layer count");
    std::vector<LayerSpec> head;
    for (std::uint32_t i = 0; i < n; ++i) head.push_back(ReadLayer(in));
    spec.heads.push_back(std::move(head));
  }
  try {
    spec.Validate();
  } catch (const ConfigError& e) {
    throw LoadError(std::string("invalid network spec in file: ") + e.what());
  }
  return spec;
}

void WriteTensors(std::ostream& out,
                  const std::vector<LayerParams<float>>& layers) {
  for (const auto& layer : layers) {
    WriteFloats(out, layer.weight);
    WriteFloats(out, layer.bias);
  }
}

void ReadTensors(std::istream& in, std::vector<LayerParams<float>>& layers) {
  for (auto& layer : layers) {
    ReadFloats(in, layer.weight);
    ReadFloats(in, layer.bias);
  }
}

}  // namespace d3qn::neuro
