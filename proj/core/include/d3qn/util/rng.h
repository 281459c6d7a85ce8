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

#ifndef D3QN_UTIL_RNG_H_
#define D3QN_UTIL_RNG_H_

#include <cstdint>
#include <random>
#include <string>

namespace d3qn {

// Independent 64-bit seed for stream `stream` of master seed `seed`
// (SplitMix64 finalizer over both words).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Engine state as text, for checkpoints.
std::string SaveEngine(const std::mt19937_64& engine);
// Throws LoadError on malformed text.
void LoadEngine(const std::string& text, std::mt19937_64& engine);

}  // namespace d3qn

#endif  // D3QN_UTIL_RNG_H_
