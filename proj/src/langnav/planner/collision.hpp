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

#ifndef LANGNAV_PLANNER_COLLISION_H_
#define LANGNAV_PLANNER_COLLISION_H_

#include <vector>

#include "langnav/costmap/costmap.hpp"

namespace langnav::planner {

struct GridCell {
  int x = 0;
  int y = 0;

  bool operator==(const GridCell&) const = default;
  auto operator<=>(const GridCell&) const = default;
};

// Every grid cell whose closed square intersects the closed segment,
// including cells touched only at a corner or an edge. Endpoints are snapped
// to 2^-20 of a cell and the traversal runs in integer arithmetic, so corner
// and boundary contacts are decided exactly. Result is sorted and unique.
std::vector<GridCell> supercover_line(double x0, double y0, double x1,
                                      double y1, double resolution);

// True (blocked) iff any in-window cell under the segment from `from` to
// `to` (world coordinates, window anchored at `frame`) has cost >=
// threshold. Cells beyond the window are not considered.
bool check_collision_line(const costmap::CostMap& c_se,
                          const costmap::LocalFrame& frame, double from_x,
                          double from_y, double to_x, double to_y,
                          double threshold);

}  // namespace langnav::planner

#endif  // LANGNAV_PLANNER_COLLISION_H_
