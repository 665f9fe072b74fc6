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

#include "langnav/sim/world.hpp"

#include <algorithm>
#include <cmath>

#include "langnav/core/errors.hpp"
#include "langnav/core/geometry.hpp"
#include "langnav/core/rng.hpp"

namespace langnav::sim {
namespace {

// Stream ids for the counter RNG; one per independent noise source.
constexpr std::uint64_t kStreamSemantic = 1;
constexpr std::uint64_t kStreamElevation = 2;
constexpr std::uint64_t kStreamDetection = 3;
constexpr std::uint64_t kStreamFalsePositive = 4;

}  // namespace

std::string to_string(SemanticClass c) {
  switch (c) {
    case SemanticClass::kSmooth:
      return "smooth";
    case SemanticClass::kRough:
      return "rough";
    case SemanticClass::kBumpy:
      return "bumpy";
    case SemanticClass::kForbidden:
      return "forbidden";
    case SemanticClass::kObstacle:
      return "obstacle";
    case SemanticClass::kBackground:
      return "background";
  }
  return "background";
}

WorldMap::WorldMap(int width, int height, double resolution, SemanticClass fill)
    : width_(width),
      height_(height),
      resolution_(resolution),
      semantics_(static_cast<std::size_t>(width) * height, fill),
      elevation_(static_cast<std::size_t>(width) * height, 0.0) {
  if (width <= 0 || height <= 0 || resolution <= 0.0) {
    throw Error("world dimensions and resolution must be positive");
  }
}

bool WorldMap::in_bounds(double x, double y) const {
  return x >= 0.0 && y >= 0.0 && x < width_ * resolution_ &&
         y < height_ * resolution_;
}

int WorldMap::cell_x(double x) const {
  return static_cast<int>(std::floor(x / resolution_));
}

int WorldMap::cell_y(double y) const {
  return static_cast<int>(std::floor(y / resolution_));
}

SemanticClass WorldMap::semantic_at(int cx, int cy) const {
  return semantics_[static_cast<std::size_t>(cy) * width_ + cx];
}

double WorldMap::elevation_at(int cx, int cy) const {
  return elevation_[static_cast<std::size_t>(cy) * width_ + cx];
}

SemanticClass WorldMap::semantic_at_world(double x, double y) const {
  if (!in_bounds(x, y)) return SemanticClass::kBackground;
  return semantic_at(cell_x(x), cell_y(y));
}

double WorldMap::elevation_at_world(double x, double y) const {
  if (!in_bounds(x, y)) return 0.0;
  return elevation_at(cell_x(x), cell_y(y));
}

void WorldMap::set_semantic(int cx, int cy, SemanticClass c) {
  semantics_[static_cast<std::size_t>(cy) * width_ + cx] = c;
}

void WorldMap::set_elevation(int cx, int cy, double h) {
  if (!std::isfinite(h)) throw Error("elevation must be finite");
  elevation_[static_cast<std::size_t>(cy) * width_ + cx] = h;
}

void WorldMap::add_landmark(Landmark lm) {
  if (!in_bounds(lm.x, lm.y)) {
    throw OutOfBoundsError("landmark '" + lm.name + "' outside world bounds");
  }
  landmarks_.push_back(std::move(lm));
}

const Landmark* WorldMap::find_landmark(
    const std::string& normalized_name) const {
  for (const Landmark& lm : landmarks_) {
    if (lm.name == normalized_name) return &lm;
  }
  return nullptr;
}

ControlInput VehicleModel::clamp(const ControlInput& u) const {
  ControlInput out;
  out.steering = std::clamp(u.steering, -steer_max, steer_max);
  out.speed = std::clamp(u.speed, 0.0, v_max);
  return out;
}

VehicleState VehicleModel::step(const VehicleState& state,
                                const ControlInput& control, double dt,
                                ControlInput* applied) const {
  const ControlInput u = clamp(control);
  if (applied != nullptr) *applied = u;
  VehicleState next;
  next.x = state.x + u.speed * std::cos(state.heading) * dt;
  next.y = state.y + u.speed * std::sin(state.heading) * dt;
  next.heading = wrap_angle(state.heading +
                            u.speed / wheelbase * std::tan(u.steering) * dt);
  next.speed = u.speed;
  return next;
}

bool Observation::operator==(const Observation& other) const {
  return cells == other.cells && resolution == other.resolution &&
         semantics == other.semantics && elevation == other.elevation &&
         detections == other.detections;
}

bool operator==(const DetectionEvent& a, const DetectionEvent& b) {
  return a.landmark_name == b.landmark_name && a.bearing == b.bearing &&
         a.range == b.range && a.is_true_positive == b.is_true_positive;
}

Observation observe(const WorldMap& world, const VehicleState& state,
                    const SensorNoiseModel& noise, std::uint64_t tick,
                    const std::optional<std::string>& target_hint) {
  if (!world.in_bounds(state.x, state.y)) {
    throw OutOfBoundsError("vehicle outside world bounds");
  }
  const int cells = noise.window_cells;
  const double res = noise.window_resolution;
  const int center = cells / 2;
  const double fwd_x = std::cos(state.heading);
  const double fwd_y = std::sin(state.heading);
  const double right_x = fwd_y;
  const double right_y = -fwd_x;

  Observation obs;
  obs.cells = cells;
  obs.resolution = res;
  obs.semantics.resize(static_cast<std::size_t>(cells) * cells);
  obs.elevation.resize(static_cast<std::size_t>(cells) * cells);

  for (int iy = 0; iy < cells; ++iy) {
    const double f = (iy - center) * res;
    for (int ix = 0; ix < cells; ++ix) {
      const double u = (ix - center) * res;
      const double wx = state.x + f * fwd_x + u * right_x;
      const double wy = state.y + f * fwd_y + u * right_y;
      const std::size_t idx = static_cast<std::size_t>(iy) * cells + ix;

      SemanticClass cls = world.semantic_at_world(wx, wy);
      const double flip_p =
          noise.semantic_flip_prob[static_cast<std::size_t>(cls)];
      if (flip_p > 0.0 &&
          rng::uniform(noise.seed, kStreamSemantic, tick, idx, 0) < flip_p) {
        // Uniform over the five other classes.
        const auto shift =
            1 + rng::below(kSemanticClassCount - 1, noise.seed, kStreamSemantic,
                           tick, idx, 1);
        cls = static_cast<SemanticClass>(
            (static_cast<std::uint64_t>(cls) + shift) % kSemanticClassCount);
      }
      obs.semantics[idx] = cls;

      double h = world.elevation_at_world(wx, wy);
      if (noise.elevation_sigma > 0.0) {
        h += noise.elevation_sigma *
             rng::normal(noise.seed, kStreamElevation, tick, idx);
      }
      obs.elevation[idx] = h;
    }
  }

  const std::vector<Landmark>& landmarks = world.landmarks();
  for (std::size_t li = 0; li < landmarks.size(); ++li) {
    const Landmark& lm = landmarks[li];
    const double range = distance(state.x, state.y, lm.x, lm.y);
    if (range > noise.max_detect_range) continue;
    const double bearing =
        wrap_angle(std::atan2(lm.y - state.y, lm.x - state.x) - state.heading);
    if (std::abs(bearing) > noise.fov / 2.0) continue;
    if (noise.detect_fn_prob > 0.0 &&
        rng::uniform(noise.seed, kStreamDetection, tick, li) <
            noise.detect_fn_prob) {
      continue;
    }
    obs.detections.push_back(
        DetectionEvent{lm.name, bearing, std::max(range, 1e-9), true});
  }

  if (target_hint.has_value() && noise.detect_fp_prob > 0.0 &&
      rng::uniform(noise.seed, kStreamFalsePositive, tick, 0) <
          noise.detect_fp_prob) {
    const double bearing =
        (rng::uniform(noise.seed, kStreamFalsePositive, tick, 1) - 0.5) *
        noise.fov;
    const double range =
        0.5 + rng::uniform(noise.seed, kStreamFalsePositive, tick, 2) *
                  (noise.max_detect_range - 0.5);
    obs.detections.push_back(DetectionEvent{*target_hint, bearing, range, false});
  }

  return obs;
}

bool check_reached(const VehicleState& state, const Landmark& landmark,
                   double threshold) {
  return distance(state.x, state.y, landmark.x, landmark.y) < threshold;
}

}  // namespace langnav::sim
