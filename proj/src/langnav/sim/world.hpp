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

#ifndef LANGNAV_SIM_WORLD_H_
#define LANGNAV_SIM_WORLD_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace langnav::sim {

// Terrain navigability classes, one per cell.
enum class SemanticClass : std::uint8_t {
  kSmooth = 0,
  kRough = 1,
  kBumpy = 2,
  kForbidden = 3,
  kObstacle = 4,
  kBackground = 5,
};

inline constexpr int kSemanticClassCount = 6;

std::string to_string(SemanticClass c);

struct Landmark {
  std::string name;  // lowercase-normalized
  double x = 0.0;    // meters
  double y = 0.0;
  double radius = 0.5;
};

// Ground truth: co-registered semantic and elevation grids plus landmarks.
// Immutable after construction; row-major with (col, row) = (x, y) cells.
class WorldMap {
 public:
  WorldMap(int width, int height, double resolution,
           SemanticClass fill = SemanticClass::kSmooth);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }

  bool in_bounds(double x, double y) const;
  int cell_x(double x) const;
  int cell_y(double y) const;

  SemanticClass semantic_at(int cx, int cy) const;
  double elevation_at(int cx, int cy) const;
  // World-coordinate lookups; out-of-bounds reads Background / 0 elevation.
  SemanticClass semantic_at_world(double x, double y) const;
  double elevation_at_world(double x, double y) const;

  void set_semantic(int cx, int cy, SemanticClass c);
  void set_elevation(int cx, int cy, double h);

  const std::vector<Landmark>& landmarks() const { return landmarks_; }
  void add_landmark(Landmark lm);
  const Landmark* find_landmark(const std::string& normalized_name) const;

 private:
  int width_;
  int height_;
  double resolution_;
  std::vector<SemanticClass> semantics_;
  std::vector<double> elevation_;
  std::vector<Landmark> landmarks_;
};

struct VehicleState {
  double x = 0.0;        // meters
  double y = 0.0;
  double heading = 0.0;  // radians in (-pi, pi]
  double speed = 0.0;    // meters/second

  bool operator==(const VehicleState&) const = default;
};

struct ControlInput {
  double steering = 0.0;  // radians
  double speed = 0.0;     // meters/second

  bool operator==(const ControlInput&) const = default;
};

// Kinematic bicycle with actuation limits. Inputs outside the limits are
// clamped; step() reports the value actually applied through `applied`.
struct VehicleModel {
  double wheelbase = 0.5;   // meters
  double steer_max = 0.45;  // radians
  double v_max = 2.0;       // meters/second

  ControlInput clamp(const ControlInput& u) const;
  VehicleState step(const VehicleState& state, const ControlInput& control,
                    double dt, ControlInput* applied = nullptr) const;
};

struct DetectionEvent {
  std::string landmark_name;
  double bearing = 0.0;  // radians relative to heading
  double range = 0.0;    // meters, > 0
  bool is_true_positive = true;  // ground truth, for post-hoc attribution
};

// Sensing geometry and corruption. All probabilities in [0, 1]; `seed`
// drives the per-(tick, cell) counter RNG so observations replay exactly.
struct SensorNoiseModel {
  std::array<double, kSemanticClassCount> semantic_flip_prob{};
  double elevation_sigma = 0.0;  // meters
  double detect_fn_prob = 0.0;
  double detect_fp_prob = 0.0;
  double max_detect_range = 8.0;    // meters
  double fov = 1.518436449235;      // radians (87 deg)
  std::uint64_t seed = 0;
  int window_cells = 80;            // square robot-centric window
  double window_resolution = 0.10;  // meters/cell

  void set_uniform_flip_prob(double p) { semantic_flip_prob.fill(p); }
};

// Robot-centric snapshot for one tick. Grids are window_cells x window_cells
// at window_resolution; column x runs from the vehicle's left (x = 0) to its
// right, row y from behind to ahead, vehicle at the center cell.
struct Observation {
  int cells = 0;
  double resolution = 0.10;
  std::vector<SemanticClass> semantics;  // row-major, index = y * cells + x
  std::vector<double> elevation;
  std::vector<DetectionEvent> detections;

  SemanticClass semantic_at(int x, int y) const {
    return semantics[static_cast<std::size_t>(y) * cells + x];
  }
  double elevation_at(int x, int y) const {
    return elevation[static_cast<std::size_t>(y) * cells + x];
  }

  bool operator==(const Observation&) const;
};

bool operator==(const DetectionEvent& a, const DetectionEvent& b);

// Sample the world around the vehicle and corrupt per the noise model.
// Randomness is keyed by (seed, tick, cell/landmark index) only, so repeated
// calls with identical arguments return identical observations. When
// `target_hint` is set, spurious detections of that name may appear with
// detect_fp_prob. Throws OutOfBoundsError when the vehicle is off-world.
Observation observe(const WorldMap& world, const VehicleState& state,
                    const SensorNoiseModel& noise, std::uint64_t tick,
                    const std::optional<std::string>& target_hint = {});

// Strictly-below-threshold Euclidean test.
bool check_reached(const VehicleState& state, const Landmark& landmark,
                   double threshold);

}  // namespace langnav::sim

#endif  // LANGNAV_SIM_WORLD_H_
