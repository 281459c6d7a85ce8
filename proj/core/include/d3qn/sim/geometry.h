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

#ifndef D3QN_SIM_GEOMETRY_H_
#define D3QN_SIM_GEOMETRY_H_

#include <cmath>
#include <optional>
#include <variant>

namespace d3qn {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double Norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Segment {
  Vec2 a;
  Vec2 b;
};

// Axis-aligned box; min is strictly below max on both axes once validated.
struct Box {
  Vec2 min;
  Vec2 max;
};

struct Disc {
  Vec2 center;
  double radius = 0.0;
};

using Shape = std::variant<Segment, Box, Disc>;

// Squared Euclidean distance from p to the closest point of the shape.
// Points inside a box or disc are at distance zero.
double SquaredDistance(Vec2 p, const Segment& s);
double SquaredDistance(Vec2 p, const Box& b);
double SquaredDistance(Vec2 p, const Disc& d);
double SquaredDistance(Vec2 p, const Shape& shape);

// Closed-set overlap test between a disc and a shape: touching counts.
bool DiscTouches(Vec2 center, double radius, const Shape& shape);

// Smallest t >= 0 such that origin + t * dir lies on the shape, or nullopt.
// `dir` must be a unit vector so that t is a distance.
std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Segment& s);
std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Box& b);
std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Disc& d);
std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Shape& shape);

// Tight axis-aligned bounds of a shape.
Box BoundingBox(const Shape& shape);

}  // namespace d3qn

#endif  // D3QN_SIM_GEOMETRY_H_
