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


#include "d3qn_cli/render.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "d3qn/errors.h"

namespace d3qn::cli {
namespace {

class Canvas {
 public:
  Canvas(const Box& bounds, const RenderOptions& o)
      : bounds_(bounds), scale_(o.pixels_per_meter), margin_(o.margin_px) {}

  double width() const { return 2 * margin_ + (bounds_.max.x - bounds_.min.x) * scale_; }
  double height() const { return 2 * margin_ + (bounds_.max.y - bounds_.min.y) * scale_; }
  // SVG y grows downward.
  double X(double x) const { return margin_ + (x - bounds_.min.x) * scale_; }
  double Y(double y) const { return margin_ + (bounds_.max.y - y) * scale_; }
  double L(double len) const { return len * scale_; }

 private:
  Box bounds_;
  double scale_;
  double margin_;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

void DrawShape(std::ostream& out, const Canvas& c, const Shape& shape) {
  if (const auto* seg = std::get_if<Segment>(&shape)) {
    out << "  <line x1=\"" << Num(c.X(seg->a.x)) << "\" y1=\"" << Num(c.Y(seg->a.y))
        << "\" x2=\"" << Num(c.X(seg->b.x)) << "\" y2=\"" << Num(c.Y(seg->b.y))
        << "\" stroke=\"#333333\" stroke-width=\"3\"/>\n";
  } else if (const auto* box = std::get_if<Box>(&shape)) {
    out << "  <rect x=\"" << Num(c.X(box->min.x)) << "\" y=\"" << Num(c.Y(box->max.y))
        << "\" width=\"" << Num(c.L(box->max.x - box->min.x)) << "\" height=\""
        << Num(c.L(box->max.y - box->min.y)) << "\" fill=\"#777777\"/>\n";
  } else {
    const Disc& d = std::get<Disc>(shape);
    out << "  <circle cx=\"" << Num(c.X(d.center.x)) << "\" cy=\"" << Num(c.Y(d.center.y))
        << "\" r=\"" << Num(c.L(d.radius)) << "\" fill=\"#777777\"/>\n";
  }
}

}  // namespace

std::string RenderTrajectorySvg(const WorldMap& world,
                                const std::vector<RobotState>& poses,
                                const RenderOptions& options) {
  if (poses.empty()) throw UsageError("render: pose log is empty");
  Canvas c(world.bounds, options);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(c.width())
      << "\" height=\"" << Num(c.height()) << "\" viewBox=\"0 0 " << Num(c.width())
      << " " << Num(c.height()) << "\">\n";
  out << "  <title>" << world.name << "</title>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << Num(c.width()) << "\" height=\""
      << Num(c.height()) << "\" fill=\"#ffffff\"/>\n";
  if (options.draw_spawn_regions) {
    for (const Box& r : world.spawn_regions) {
      out << "  <rect x=\"" << Num(c.X(r.min.x)) << "\" y=\"" << Num(c.Y(r.max.y))
          << "\" width=\"" << Num(c.L(r.max.x - r.min.x)) << "\" height=\""
          << Num(c.L(r.max.y - r.min.y))
          << "\" fill=\"#d8ecff\" stroke=\"#9cc3e6\" stroke-dasharray=\"4 3\"/>\n";
    }
  }
  for (const Shape& s : world.obstacles) DrawShape(out, c, s);

  out << "  <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < poses.size(); ++i) {
    if (i > 0) out << ' ';
    out << Num(c.X(poses[i].x)) << ',' << Num(c.Y(poses[i].y));
  }
  out << "\"/>\n";

  const RobotState& start = poses.front();
  const RobotState& end = poses.back();
  out << "  <circle class=\"start\" cx=\"" << Num(c.X(start.x)) << "\" cy=\""
      << Num(c.Y(start.y)) << "\" r=\"" << Num(c.L(options.robot_radius))
      << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";
  out << "  <circle class=\"end\" cx=\"" << Num(c.X(end.x)) << "\" cy=\""
      << Num(c.Y(end.y)) << "\" r=\"" << Num(c.L(options.robot_radius))
      << "\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string PoseLogCsv(const std::vector<RobotState>& poses) {
  std::ostringstream out;
  out << "step,x,y,theta\n";
  char buf[128];
  for (std::size_t i = 0; i < poses.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i, poses[i].x,
                  poses[i].y, poses[i].theta);
    out << buf;
  }
  return out.str();
}

std::vector<RobotState> ReadPoseLogCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read pose log " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("step,x,y,theta", 0) != 0) {
    throw SchemaError(path.string() + ": expected header step,x,y,theta");
  }
  std::vector<RobotState> poses;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    RobotState s;
    long step = 0;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf", &step, &s.x, &s.y, &s.theta) != 4) {
      throw SchemaError(path.string() + ": line " + std::to_string(lineno) +
                        ": malformed pose row");
    }
    poses.push_back(s);
  }
  return poses;
}

}  // namespace d3qn::cli
