// Copyright 2026 The Langnav Authors
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

#include "langnav/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace langnav::harness {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Five-point star path centered at (x, y), SVG user units.
std::string star_points(double x, double y, double outer, double inner) {
  std::ostringstream out;
  for (int i = 0; i < 10; ++i) {
    const double r = (i % 2 == 0) ? outer : inner;
    const double a = -std::numbers::pi / 2 + i * std::numbers::pi / 5;
    if (i > 0) out << ' ';
    out << num(x + r * std::cos(a)) << ',' << num(y + r * std::sin(a));
  }
  return out.str();
}

}  // namespace

std::string semantic_color(sim::SemanticClass c) {
  switch (c) {
    case sim::SemanticClass::kSmooth:
      return "#3cb44b";  // green
    case sim::SemanticClass::kRough:
      return "#ffe119";  // yellow
    case sim::SemanticClass::kBumpy:
      return "#f58231";  // orange
    case sim::SemanticClass::kForbidden:
      return "#e6194b";  // red
    case sim::SemanticClass::kObstacle:
      return "#4363d8";  // blue
    case sim::SemanticClass::kBackground:
      return "#000000";  // black
  }
  return "#000000";
}

std::string render_svg(
    const sim::WorldMap& world,
    const std::vector<nav::TrajectoryRow>& trajectory,
    const std::vector<std::pair<int, costmap::CostMap>>& snapshots,
    const std::string& title) {
  const double res = world.resolution();
  const double world_w = world.width() * res;
  const double world_h = world.height() * res;
  const double scale = 60.0;  // pixels per meter
  const double margin = 10.0;
  const double snapshot_side = 160.0;
  const double snapshots_h =
      snapshots.empty() ? 0.0 : snapshot_side + 2 * margin;
  const double width_px = world_w * scale + 2 * margin;
  const double height_px = world_h * scale + 2 * margin + snapshots_h;

  auto px = [&](double x) { return margin + x * scale; };
  auto py = [&](double y) { return margin + (world_h - y) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << num(width_px) << "\" height=\"" << num(height_px)
      << "\" viewBox=\"0 0 " << num(width_px) << ' ' << num(height_px)
      << "\">\n";
  if (!title.empty()) {
    svg << "<title>" << title << "</title>\n";
  }

  // Terrain, merging same-class runs along each row.
  svg << "<g shape-rendering=\"crispEdges\">\n";
  for (int cy = 0; cy < world.height(); ++cy) {
    int run_start = 0;
    sim::SemanticClass run_class = world.semantic_at(0, cy);
    for (int cx = 1; cx <= world.width(); ++cx) {
      const bool flush = cx == world.width() ||
                         world.semantic_at(cx, cy) != run_class;
      if (!flush) continue;
      svg << "<rect x=\"" << num(px(run_start * res)) << "\" y=\""
          << num(py((cy + 1) * res)) << "\" width=\""
          << num((cx - run_start) * res * scale) << "\" height=\""
          << num(res * scale) << "\" fill=\"" << semantic_color(run_class)
          << "\"/>\n";
      if (cx < world.width()) {
        run_start = cx;
        run_class = world.semantic_at(cx, cy);
      }
    }
  }
  svg << "</g>\n";

  // Landmarks as stars; the final landmark also gets the goal cross.
  const std::vector<sim::Landmark>& landmarks = world.landmarks();
  for (const sim::Landmark& lm : landmarks) {
    svg << "<polygon points=\""
        << star_points(px(lm.x), py(lm.y), 9.0, 3.6)
        << "\" fill=\"#ffd700\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(px(lm.x) + 10) << "\" y=\""
        << num(py(lm.y) - 8) << "\" font-size=\"11\" fill=\"#ffffff\">"
        << lm.name << "</text>\n";
  }
  if (!landmarks.empty()) {
    const sim::Landmark& goal = landmarks.back();
    const double gx = px(goal.x), gy = py(goal.y), arm = 12.0;
    svg << "<path d=\"M " << num(gx - arm) << ' ' << num(gy) << " H "
        << num(gx + arm) << " M " << num(gx) << ' ' << num(gy - arm) << " V "
        << num(gy + arm)
        << "\" stroke=\"#ffffff\" stroke-width=\"2.5\" fill=\"none\"/>\n";
  }

  if (!trajectory.empty()) {
    svg << "<polyline points=\"";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << num(px(trajectory[i].x)) << ',' << num(py(trajectory[i].y));
    }
    svg << "\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"2\""
           " stroke-opacity=\"0.9\"/>\n";
    svg << "<circle cx=\"" << num(px(trajectory.front().x)) << "\" cy=\""
        << num(py(trajectory.front().y))
        << "\" r=\"5\" fill=\"#ffffff\" stroke=\"#333333\""
           " stroke-width=\"1.5\"/>\n";
  }

  // Cost-map snapshots, dark = cheap.
  double sx = margin;
  const double sy = world_h * scale + 2 * margin;
  for (const auto& [tick, map] : snapshots) {
    const double cell = snapshot_side / std::max(map.width(), map.height());
    svg << "<g shape-rendering=\"crispEdges\">\n";
    for (int cy = 0; cy < map.height(); ++cy) {
      for (int cx = 0; cx < map.width(); ++cx) {
        const int grey = static_cast<int>(
            255.0 * std::clamp(map.at(cx, cy) / map.c_max(), 0.0, 1.0));
        char color[8];
        std::snprintf(color, sizeof(color), "#%02x%02x%02x", grey, grey, grey);
        svg << "<rect x=\"" << num(sx + cx * cell) << "\" y=\""
            << num(sy + (map.height() - 1 - cy) * cell) << "\" width=\""
            << num(cell) << "\" height=\"" << num(cell) << "\" fill=\""
            << color << "\"/>\n";
      }
    }
    svg << "</g>\n";
    svg << "<text x=\"" << num(sx) << "\" y=\""
        << num(sy + snapshot_side + 12)
        << "\" font-size=\"10\" fill=\"#333333\">tick " << tick
        << "</text>\n";
    sx += snapshot_side + margin;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace langnav::harness
