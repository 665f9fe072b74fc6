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

#include "langnav/planner/collision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "langnav/core/errors.hpp"

namespace langnav::planner {
namespace {

// Cells are subdivided into 2^20 subunits per side; endpoints snap to the
// subunit lattice. From there every decision is an int64 comparison, so
// corner and boundary contacts are exact instead of epsilon-dependent.
constexpr std::int64_t kScale = 1 << 20;

std::int64_t floor_div(std::int64_t a, std::int64_t s) {
  return a >= 0 ? a / s : -((-a + s - 1) / s);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t s) {
  return a - floor_div(a, s) * s;
}

class CellSink {
 public:
  void emit(std::int64_t x, std::int64_t y) {
    cells_.push_back(GridCell{static_cast<int>(x), static_cast<int>(y)});
  }

  // Cells containing the point, including all boundary neighbors.
  void emit_point(std::int64_t px, std::int64_t py) {
    const bool on_x = floor_mod(px, kScale) == 0;
    const bool on_y = floor_mod(py, kScale) == 0;
    const std::int64_t cx = floor_div(px, kScale);
    const std::int64_t cy = floor_div(py, kScale);
    for (int dx = on_x ? -1 : 0; dx <= 0; ++dx) {
      for (int dy = on_y ? -1 : 0; dy <= 0; ++dy) {
        emit(cx + dx, cy + dy);
      }
    }
  }

  std::vector<GridCell> take() {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    return std::move(cells_);
  }

 private:
  std::vector<GridCell> cells_;
};

}  // namespace

std::vector<GridCell> supercover_line(double x0, double y0, double x1,
                                      double y1, double resolution) {
  if (resolution <= 0.0) throw Error("resolution must be positive");
  auto snap = [resolution](double v) {
    return static_cast<std::int64_t>(
        std::llround(v / resolution * static_cast<double>(kScale)));
  };
  std::int64_t ax = snap(x0), ay = snap(y0), bx = snap(x1), by = snap(y1);

  // Keep magnitudes small so the cross-multiplied comparisons below stay
  // within int64.
  const std::int64_t shift_x =
      floor_div(std::min(ax, bx), kScale) * kScale;
  const std::int64_t shift_y =
      floor_div(std::min(ay, by), kScale) * kScale;
  ax -= shift_x;
  bx -= shift_x;
  ay -= shift_y;
  by -= shift_y;
  // Bounds the cross products below to ~2^62.
  const std::int64_t span = std::max(std::abs(bx - ax), std::abs(by - ay));
  if (span > 2000LL * kScale) {
    throw Error("segment too long to rasterize");
  }

  CellSink sink;
  sink.emit_point(ax, ay);
  sink.emit_point(bx, by);

  const std::int64_t dx = bx - ax;
  const std::int64_t dy = by - ay;

  if (dx == 0 && dy == 0) {
    auto cells = sink.take();
    for (GridCell& c : cells) {
      c.x += static_cast<int>(shift_x / kScale);
      c.y += static_cast<int>(shift_y / kScale);
    }
    return cells;
  }

  // A segment riding exactly on a grid line touches the cells on both sides
  // along its whole length.
  if (dx == 0 && floor_mod(ax, kScale) == 0) {
    const std::int64_t col = floor_div(ax, kScale);
    const std::int64_t r0 = floor_div(std::min(ay, by), kScale);
    const std::int64_t r1 = floor_div(std::max(ay, by), kScale);
    for (std::int64_t r = r0; r <= r1; ++r) {
      sink.emit(col - 1, r);
      sink.emit(col, r);
    }
  } else if (dy == 0 && floor_mod(ay, kScale) == 0) {
    const std::int64_t row = floor_div(ay, kScale);
    const std::int64_t c0 = floor_div(std::min(ax, bx), kScale);
    const std::int64_t c1 = floor_div(std::max(ax, bx), kScale);
    for (std::int64_t c = c0; c <= c1; ++c) {
      sink.emit(c, row - 1);
      sink.emit(c, row);
    }
  } else {
    const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
    const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
    const std::int64_t adx = std::abs(dx);
    const std::int64_t ady = std::abs(dy);

    // Cell the segment occupies just after leaving the start point.
    std::int64_t cx = floor_div(ax, kScale);
    std::int64_t cy = floor_div(ay, kScale);
    if (step_x < 0 && floor_mod(ax, kScale) == 0) --cx;
    if (step_y < 0 && floor_mod(ay, kScale) == 0) --cy;
    sink.emit(cx, cy);

    while (true) {
      std::int64_t nx = 0, ny = 0;
      bool valid_x = step_x != 0;
      if (valid_x) {
        const std::int64_t boundary =
            (step_x > 0 ? (cx + 1) * kScale : cx * kScale);
        nx = std::abs(boundary - ax);
        valid_x = nx < adx;  // crossing strictly before the end point
      }
      bool valid_y = step_y != 0;
      if (valid_y) {
        const std::int64_t boundary =
            (step_y > 0 ? (cy + 1) * kScale : cy * kScale);
        ny = std::abs(boundary - ay);
        valid_y = ny < ady;
      }
      if (!valid_x && !valid_y) break;

      if (valid_x && valid_y) {
        const std::int64_t lhs = nx * ady;
        const std::int64_t rhs = ny * adx;
        if (lhs < rhs) {
          cx += step_x;
        } else if (lhs > rhs) {
          cy += step_y;
        } else {
          // Exact corner crossing: both side cells touch the corner point.
          sink.emit(cx + step_x, cy);
          sink.emit(cx, cy + step_y);
          cx += step_x;
          cy += step_y;
        }
      } else if (valid_x) {
        cx += step_x;
      } else {
        cy += step_y;
      }
      sink.emit(cx, cy);
    }
  }

  auto cells = sink.take();
  for (GridCell& c : cells) {
    c.x += static_cast<int>(shift_x / kScale);
    c.y += static_cast<int>(shift_y / kScale);
  }
  return cells;
}

bool check_collision_line(const costmap::CostMap& c_se,
                          const costmap::LocalFrame& frame, double from_x,
                          double from_y, double to_x, double to_y,
                          double threshold) {
  double lx0, ly0, lx1, ly1;
  costmap::world_to_local(c_se, frame, from_x, from_y, &lx0, &ly0);
  costmap::world_to_local(c_se, frame, to_x, to_y, &lx1, &ly1);
  for (const GridCell& cell :
       supercover_line(lx0, ly0, lx1, ly1, c_se.resolution())) {
    if (cell.x < 0 || cell.y < 0 || cell.x >= c_se.width() ||
        cell.y >= c_se.height()) {
      continue;
    }
    if (c_se.at(cell.x, cell.y) >= threshold) return true;
  }
  return false;
}

}  // namespace langnav::planner
