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

#ifndef LANGNAV_HARNESS_SVG_H_
#define LANGNAV_HARNESS_SVG_H_

#include <string>
#include <utility>
#include <vector>

#include "langnav/costmap/costmap.hpp"
#include "langnav/nav/navigator.hpp"
#include "langnav/sim/world.hpp"

namespace langnav::harness {

// Scene rendering: terrain classes in the fixed palette, landmark stars,
// start dot, goal cross, the driven path, and optional grayscale cost-map
// snapshots (tick, map) laid out under the scene.
std::string render_svg(
    const sim::WorldMap& world,
    const std::vector<nav::TrajectoryRow>& trajectory,
    const std::vector<std::pair<int, costmap::CostMap>>& snapshots = {},
    const std::string& title = "");

// Fill color for a semantic class (total over all six classes).
std::string semantic_color(sim::SemanticClass c);

}  // namespace langnav::harness

#endif  // LANGNAV_HARNESS_SVG_H_
