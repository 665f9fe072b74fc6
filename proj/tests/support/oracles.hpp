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

#ifndef LANGNAV_TESTS_SUPPORT_ORACLES_H_
#define LANGNAV_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "langnav/planner/collision.hpp"

namespace langnav::test_support {

// Exhaustive supercover oracle: every cell in the segment's bounding box is
// tested for closed-segment / closed-cell intersection, in exact integer
// arithmetic on the same 2^-20-cell lattice the implementation snaps to.
// Independent of the traversal: this enumerates, the implementation walks.
inline std::vector<planner::GridCell> supercover_oracle(double x0, double y0,
                                                        double x1, double y1,
                                                        double resolution) {
  constexpr std::int64_t kScale = 1 << 20;
  auto snap = [resolution](double v) {
    return static_cast<std::int64_t>(
        std::llround(v / resolution * static_cast<double>(kScale)));
  };
  const std::int64_t ax = snap(x0), ay = snap(y0);
  const std::int64_t bx = snap(x1), by = snap(y1);
  const std::int64_t dx = bx - ax, dy = by - ay;

  auto fdiv = [](std::int64_t a, std::int64_t s) {
    return a >= 0 ? a / s : -((-a + s - 1) / s);
  };

  const std::int64_t cx0 = fdiv(std::min(ax, bx), kScale) - 1;
  const std::int64_t cx1 = fdiv(std::max(ax, bx), kScale) + 1;
  const std::int64_t cy0 = fdiv(std::min(ay, by), kScale) - 1;
  const std::int64_t cy1 = fdiv(std::max(ay, by), kScale) + 1;

  std::vector<planner::GridCell> cells;
  for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
    for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
      const std::int64_t lo_x = cx * kScale, hi_x = (cx + 1) * kScale;
      const std::int64_t lo_y = cy * kScale, hi_y = (cy + 1) * kScale;
      // Closed bounding boxes must overlap.
      if (std::max(ax, bx) < lo_x || std::min(ax, bx) > hi_x ||
          std::max(ay, by) < lo_y || std::min(ay, by) > hi_y) {
        continue;
      }
      if (dx != 0 || dy != 0) {
        // Separating-line test: all four cell corners strictly on one side
        // of the segment's supporting line means no contact.
        auto side = [&](std::int64_t px, std::int64_t py) {
          const std::int64_t s = dx * (py - ay) - dy * (px - ax);
          return s > 0 ? 1 : (s < 0 ? -1 : 0);
        };
        const int s1 = side(lo_x, lo_y), s2 = side(hi_x, lo_y),
                  s3 = side(lo_x, hi_y), s4 = side(hi_x, hi_y);
        if (s1 == s2 && s2 == s3 && s3 == s4 && s1 != 0) continue;
      }
      cells.push_back(
          {static_cast<int>(cx), static_cast<int>(cy)});
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

}  // namespace langnav::test_support

#endif  // LANGNAV_TESTS_SUPPORT_ORACLES_H_
