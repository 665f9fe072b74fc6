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

#ifndef LANGNAV_COSTMAP_COSTMAP_H_
#define LANGNAV_COSTMAP_COSTMAP_H_

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "langnav/route/route.hpp"
#include "langnav/sim/world.hpp"

namespace langnav::costmap {

// Robot-centric cost grid. Column x is the lateral axis (x = 0 at the
// vehicle's left), row y points ahead. Cells hold [0, c_max].
class CostMap {
 public:
  CostMap(int width, int height, double resolution, double c_max);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  double c_max() const { return c_max_; }

  double at(int x, int y) const {
    return cost_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set(int x, int y, double value);
  void add_clamped(int x, int y, double delta);

  const std::vector<double>& data() const { return cost_; }

  bool same_shape(const CostMap& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           resolution_ == other.resolution_;
  }

  bool operator==(const CostMap&) const = default;

 private:
  int width_;
  int height_;
  double resolution_;
  double c_max_;
  std::vector<double> cost_;
};

// Per-class navigability costs. Defaults keep the ordinal ranking
// smooth < rough < bumpy < forbidden = obstacle with c_max = 100.
struct SemanticCostTable {
  double c_max = 100.0;
  std::array<double, sim::kSemanticClassCount> cost{0.0, 30.0, 60.0,
                                                    100.0, 100.0, 45.0};

  double operator[](sim::SemanticClass c) const {
    return cost[static_cast<std::size_t>(c)];
  }
};

struct ElevationCostParams {
  double slope_gain = 50.0;      // cost per unit gradient
  double roughness_gain = 400.0; // cost per m^2 of local height variance
  double saturation = 100.0;     // cost units
};

struct ManeuverPenaltyParams {
  double sigma = 12.0;  // cells
};

struct HeightOnlyParams {
  double step_max = 0.15;  // meters; larger local steps cost c_max
};

// cost(x, y) = table[semantics(x, y)].
CostMap build_semantic_cost(const sim::Observation& obs,
                            const SemanticCostTable& table);

// Slope (central differences, one-sided at borders) plus local roughness
// (height variance around the 3x3 least-squares plane), saturated. A uniform
// slope costs slope_gain * |gradient| only.
CostMap build_elevation_cost(const sim::Observation& obs,
                             const ElevationCostParams& params,
                             double c_max = 100.0);

// Cell-wise sum clamped to c_max. Shapes must match.
CostMap aggregate(const CostMap& c_s, const CostMap& c_e);

// Turn maneuvers add a Gaussian column penalty peaking at the rightmost
// column (Left) or the leftmost column (Right), then clamp to c_max.
// Straight and Stop return the map unchanged.
CostMap apply_maneuver_penalty(const CostMap& c_se, route::Maneuver m,
                               const ManeuverPenaltyParams& params);

// Geometry-only baseline map: c_max where the local height step exceeds
// step_max, zero elsewhere; semantics ignored.
CostMap build_height_only_cost(const sim::Observation& obs,
                               const HeightOnlyParams& params,
                               double c_max = 100.0);

// Pose the robot-centric window is anchored at: the vehicle sits on the
// center cell, +y ahead along `heading`, +x to its right.
struct LocalFrame {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// World point -> window cell; false when the point is outside the window.
bool world_to_cell(const CostMap& map, const LocalFrame& frame, double wx,
                   double wy, int* cx, int* cy);

// Window-local metric coordinates where cell (i, j) spans
// [i*res, (i+1)*res) x [j*res, (j+1)*res); used by the line rasterizer.
void world_to_local(const CostMap& map, const LocalFrame& frame, double wx,
                    double wy, double* lx, double* ly);

// Cost under a world point; cells beyond the window charge c_max.
double cost_at_world(const CostMap& map, const LocalFrame& frame, double wx,
                     double wy);

// Portable text form: header lines then row-major values, one row per line.
void write_text(const CostMap& map, std::ostream& out);
std::string to_text(const CostMap& map);
CostMap read_text(std::istream& in);

}  // namespace langnav::costmap

#endif  // LANGNAV_COSTMAP_COSTMAP_H_
