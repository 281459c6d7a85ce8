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

#include "d3qn/sim/geometry.h"

#include <algorithm>
#include <limits>

namespace d3qn {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double SquaredDistance(Vec2 p, const Segment& s) {
  const Vec2 ab = s.b - s.a;
  const Vec2 ap = p - s.a;
  const double len2 = Dot(ab, ab);
  double t = len2 > 0.0 ? Dot(ap, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 closest = s.a + t * ab;
  const Vec2 d = p - closest;
  return Dot(d, d);
}

double SquaredDistance(Vec2 p, const Box& b) {
  const double dx = std::max({b.min.x - p.x, 0.0, p.x - b.max.x});
  const double dy = std::max({b.min.y - p.y, 0.0, p.y - b.max.y});
  return dx * dx + dy * dy;
}

double SquaredDistance(Vec2 p, const Disc& d) {
  const double gap = std::max(0.0, Norm(p - d.center) - d.radius);
  return gap * gap;
}

double SquaredDistance(Vec2 p, const Shape& shape) {
  return std::visit([p](const auto& s) { return SquaredDistance(p, s); },
                    shape);
}

bool DiscTouches(Vec2 center, double radius, const Shape& shape) {
  return std::visit(
      Overloaded{
          [&](const Disc& d) {
            // Compare squared center distance against the squared radius sum
            // so that exact tangency is decided without a square root.
            const Vec2 delta = center - d.center;
            const double reach = radius + d.radius;
            return Dot(delta, delta) <= reach * reach;
          },
          [&](const auto& s) {
            return SquaredDistance(center, s) <= radius * radius;
          }},
      shape);
}

std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double denom = Cross(dir, e);
  if (denom == 0.0) return std::nullopt;  // parallel, including collinear
  const Vec2 w = s.a - origin;
  const double t = Cross(w, e) / denom;
  const double u = Cross(w, dir) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Box& b) {
  double t_enter = 0.0;
  double t_exit = std::numeric_limits<double>::infinity();
  const double o[2] = {origin.x, origin.y};
  const double d[2] = {dir.x, dir.y};
  const double lo[2] = {b.min.x, b.min.y};
  const double hi[2] = {b.max.x, b.max.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < lo[axis] || o[axis] > hi[axis]) return std::nullopt;
      continue;
    }
    double t0 = (lo[axis] - o[axis]) / d[axis];
    double t1 = (hi[axis] - o[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (t_enter > t_exit) return std::nullopt;
  }
  return t_enter;
}

std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Disc& d) {
  const Vec2 oc = origin - d.center;
  const double b = Dot(oc, dir);
  const double c = Dot(oc, oc) - d.radius * d.radius;
  if (c <= 0.0) return 0.0;  // origin inside or on the disc
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double t = -b - std::sqrt(disc);
  if (t < 0.0) return std::nullopt;
  return t;
}

std::optional<double> RayHit(Vec2 origin, Vec2 dir, const Shape& shape) {
  return std::visit([&](const auto& s) { return RayHit(origin, dir, s); },
                    shape);
}

Box BoundingBox(const Shape& shape) {
  return std::visit(
      Overloaded{
          [](const Segment& s) {
            return Box{{std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y)},
                       {std::max(s.a.x, s.b.x), std::max(s.a.y, s.b.y)}};
          },
          [](const Box& b) { return b; },
          [](const Disc& d) {
            return Box{{d.center.x - d.radius, d.center.y - d.radius},
                       {d.center.x + d.radius, d.center.y + d.radius}};
          }},
      shape);
}

}  // namespace d3qn
