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

#ifndef D3QN_NEURO_SERIALIZE_H_
#define D3QN_NEURO_SERIALIZE_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "d3qn/neuro/network.h"

namespace d3qn::neuro {

// Little-endian primitives. Readers throw LoadError on short reads.
void WriteU32(std::ostream& out, std::uint32_t value);
void WriteU64(std::ostream& out, std::uint64_t value);
void WriteI32(std::ostream& out, std::int32_t value);
std::uint32_t ReadU32(std::istream& in);
std::uint64_t ReadU64(std::istream& in);
std::int32_t ReadI32(std::istream& in);

void WriteNetworkSpec(std::ostream& out, const NetworkSpec& spec);
NetworkSpec ReadNetworkSpec(std::istream& in);

// Each weight then bias, in flattened layer order, as a u64 element count
// followed by little-endian float32 values (column-major for matrices).
void WriteTensors(std::ostream& out, const std::vector<LayerParams<float>>& layers);
// Reads into tensors that already have their final shapes; any count
// mismatch is a LoadError.
void ReadTensors(std::istream& in, std::vector<LayerParams<float>>& layers);

}  // namespace d3qn::neuro

#endif  // D3QN_NEURO_SERIALIZE_H_
