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

#ifndef D3QN_SIM_WORLD_H_
#define D3QN_SIM_WORLD_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "d3qn/sim/geometry.h"

namespace d3qn {

inline constexpr int kWorldFormatVersion = 1;

// Static 2D obstacle geometry. The four boundary walls are materialized as
// the first four segments of `obstacles`, so every collision and raycast
// query only needs to look at one list.
struct WorldMap {
  std::string name;
  Box bounds;
  std::vector<Shape> obstacles;
  std::vector<Box> spawn_regions;

  // Number of leading entries of `obstacles` that are boundary walls.
  static constexpr std::size_t kBoundaryWalls = 4;

  // Builds a world with boundary walls prepended to `interior`. No
  // validation is done; call Validate() for that.
  static WorldMap FromParts(std::string name, Box bounds,
                            std::vector<Shape> interior,
                            std::vector<Box> spawn_regions);

  // Throws ValidationError when an invariant is broken.
  void Validate() const;
};

// Parses a world document (JSON, "format": 1) and validates it.
// Throws SchemaError for malformed documents and ValidationError for worlds
// that break geometric invariants.
WorldMap LoadWorld(std::string_view document);
WorldMap LoadWorldFile(const std::filesystem::path& path);

// Serializes interior obstacles and spawn regions back to a format-1 document.
std::string WorldToJson(const WorldMap& world);

}  // namespace d3qn

#endif  // D3QN_SIM_WORLD_H_
