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

#include "d3qn/sim/world.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "d3qn/errors.h"

namespace d3qn {
namespace {

using nlohmann::json;

int LineOfOffset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

double Number(const json& value, const std::string& where) {
  if (!value.is_number()) throw SchemaError(where + ": expected a number");
  return value.get<double>();
}

Vec2 Point(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2) {
    throw SchemaError(where + ": expected [x, y]");
  }
  return {Number(value[0], where + "[0]"), Number(value[1], where + "[1]")};
}

Box Rect(const json& value, const std::string& where) {
  return {Point(Require(value, "min", where), where + ".min"),
          Point(Require(value, "max", where), where + ".max")};
}

Shape ParseShape(const json& value, const std::string& where) {
  const json& type = Require(value, "type", where);
  if (!type.is_string()) throw SchemaError(where + ".type: expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "segment") {
    return Segment{Point(Require(value, "a", where), where + ".a"),
                   Point(Require(value, "b", where), where + ".b")};
  }
  if (kind == "box") return Rect(value, where);
  if (kind == "disc") {
    return Disc{Point(Require(value, "center", where), where + ".center"),
                Number(Require(value, "radius", where), where + ".radius")};
  }
  throw SchemaError(where + ".type: unknown shape '" + kind + "'");
}

bool Contains(const Box& outer, const Box& inner) {
  return inner.min.x >= outer.min.x && inner.min.y >= outer.min.y &&
         inner.max.x <= outer.max.x && inner.max.y <= outer.max.y;
}

json PointJson(Vec2 p) { return json::array({p.x, p.y}); }

}  // namespace

WorldMap WorldMap::FromParts(std::string name, Box bounds,
                             std::vector<Shape> interior,
                             std::vector<Box> spawn_regions) {
  WorldMap world;
  world.name = std::move(name);
  world.bounds = bounds;
  const Vec2 lo = bounds.min;
  const Vec2 hi = bounds.max;
  world.obstacles = {Segment{{lo.x, lo.y}, {hi.x, lo.y}},
                     Segment{{hi.x, lo.y}, {hi.x, hi.y}},
                     Segment{{hi.x, hi.y}, {lo.x, hi.y}},
                     Segment{{lo.x, hi.y}, {lo.x, lo.y}}};
  world.obstacles.insert(world.obstacles.end(), interior.begin(),
                         interior.end());
  world.spawn_regions = std::move(spawn_regions);
  return world;
}

void WorldMap::Validate() const {
  if (!(bounds.min.x < bounds.max.x && bounds.min.y < bounds.max.y)) {
    throw ValidationError("bounds: min must be strictly below max");
  }
  if (obstacles.size() < kBoundaryWalls) {
    throw ValidationError("world is missing its boundary walls");
  }
  for (std::size_t i = kBoundaryWalls; i < obstacles.size(); ++i) {
    const std::string where =
        "obstacles[" + std::to_string(i - kBoundaryWalls) + "]";
    const Shape& shape = obstacles[i];
    if (const auto* box = std::get_if<Box>(&shape)) {
      if (!(box->min.x < box->max.x && box->min.y < box->max.y)) {
        throw ValidationError(where + ": box min must be strictly below max");
      }
    } else if (const auto* disc = std::get_if<Disc>(&shape)) {
      if (!(disc->radius > 0.0)) {
        throw ValidationError(where + ": disc radius must be positive");
      }
    } else if (const auto* seg = std::get_if<Segment>(&shape)) {
      if (seg->a == seg->b) {
        throw ValidationError(where + ": segment endpoints coincide");
      }
    }
    if (!Contains(bounds, BoundingBox(shape))) {
      throw ValidationError(where + ": obstacle lies outside the bounds");
    }
  }
  if (spawn_regions.empty()) {
    throw ValidationError("spawn_regions: at least one region is required");
  }
  for (std::size_t r = 0; r < spawn_regions.size(); ++r) {
    const std::string where = "spawn_regions[" + std::to_string(r) + "]";
    const Box& region = spawn_regions[r];
    if (!(region.min.x < region.max.x && region.min.y < region.max.y)) {
      throw ValidationError(where + ": min must be strictly below max");
    }
    if (!Contains(bounds, region)) {
      throw ValidationError(where + ": region lies outside the bounds");
    }
    // Probe an 11x11 lattice for a point that is strictly outside every
    // obstacle.
    bool has_free_point = false;
    constexpr int kProbe = 11;
    for (int i = 0; i < kProbe && !has_free_point; ++i) {
      for (int j = 0; j < kProbe && !has_free_point; ++j) {
        const Vec2 p{region.min.x + (region.max.x - region.min.x) * i / (kProbe - 1),
                     region.min.y + (region.max.y - region.min.y) * j / (kProbe - 1)};
        has_free_point = std::all_of(
            obstacles.begin(), obstacles.end(),
            [p](const Shape& s) { return SquaredDistance(p, s) > 0.0; });
      }
    }
    if (!has_free_point) {
      throw ValidationError(where + ": region has no free space");
    }
  }
}

WorldMap LoadWorld(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("line " + std::to_string(LineOfOffset(document, e.byte)) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError("world document must be an object");
  const json& format = Require(doc, "format", "world");
  if (!format.is_number_integer() || format.get<int>() != kWorldFormatVersion) {
    throw SchemaError("format: unsupported world format (expected 1)");
  }
  std::string name = doc.value("name", std::string{});
  const Box bounds = Rect(Require(doc, "bounds", "world"), "bounds");

  std::vector<Shape> interior;
  const json& obstacles = Require(doc, "obstacles", "world");
  if (!obstacles.is_array()) throw SchemaError("obstacles: expected an array");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    interior.push_back(
        ParseShape(obstacles[i], "obstacles[" + std::to_string(i) + "]"));
  }

  std::vector<Box> spawn;
  const json& regions = Require(doc, "spawn_regions", "world");
  if (!regions.is_array()) {
    throw SchemaError("spawn_regions: expected an array");
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    spawn.push_back(Rect(regions[i], "spawn_regions[" + std::to_string(i) + "]"));
  }

  WorldMap world = WorldMap::FromParts(std::move(name), bounds,
                                       std::move(interior), std::move(spawn));
  world.Validate();
  return world;
}

WorldMap LoadWorldFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open world file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return LoadWorld(text.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string WorldToJson(const WorldMap& world) {
  json doc;
  doc["format"] = kWorldFormatVersion;
  doc["name"] = world.name;
  doc["bounds"] = {{"min", PointJson(world.bounds.min)},
                   {"max", PointJson(world.bounds.max)}};
  json obstacles = json::array();
  for (std::size_t i = WorldMap::kBoundaryWalls; i < world.obstacles.size();
       ++i) {
    const Shape& shape = world.obstacles[i];
    if (const auto* s = std::get_if<Segment>(&shape)) {
      obstacles.push_back(
          {{"type", "segment"}, {"a", PointJson(s->a)}, {"b", PointJson(s->b)}});
    } else if (const auto* b = std::get_if<Box>(&shape)) {
      obstacles.push_back({{"type", "box"},
                           {"min", PointJson(b->min)},
                           {"max", PointJson(b->max)}});
    } else if (const auto* d = std::get_if<Disc>(&shape)) {
      obstacles.push_back({{"type", "disc"},
                           {"center", PointJson(d->center)},
                           {"radius", d->radius}});
    }
  }
  doc["obstacles"] = std::move(obstacles);
  json regions = json::array();
  for (const Box& r : world.spawn_regions) {
    regions.push_back({{"min", PointJson(r.min)}, {"max", PointJson(r.max)}});
  }
  doc["spawn_regions"] = std::move(regions);
  return doc.dump(2) + "\n";
}

}  // namespace d3qn
