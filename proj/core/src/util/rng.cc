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

#include "d3qn/util/rng.h"

#include <sstream>

#include "d3qn/errors.h"

namespace d3qn {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(stream + 0x632BE59BD9B4E019ULL));
}

std::string SaveEngine(const std::mt19937_64& engine) {
  std::ostringstream out;
  out << engine;
  return out.str();
}

void LoadEngine(const std::string& text, std::mt19937_64& engine) {
  std::istringstream in(text);
  std::mt19937_64 parsed;
  if (!(in >> parsed)) throw LoadError("malformed random engine state");
  engine = parsed;
}

}  // namespace d3qn
