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

#ifndef LANGNAV_NAV_NAVIGATOR_H_
#define LANGNAV_NAV_NAVIGATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "langnav/costmap/costmap.hpp"
#include "langnav/planner/mppi.hpp"
#include "langnav/route/route.hpp"
#include "langnav/sim/world.hpp"

namespace langnav::nav {

enum class PhaseKind { kSeeking, kServoing, kTurnBuffer, kDone, kFailed };

std::string to_string(PhaseKind kind);

// Where the vehicle is in the plan. step_index addresses the landmark being
// pursued (or, in TurnBuffer, the one just reached).
struct NavPhase {
  PhaseKind kind = PhaseKind::kSeeking;
  std::size_t step_index = 0;
  route::Maneuver turn = route::Maneuver::kStraight;  // TurnBuffer only
  int buffer_remaining = 0;                           // TurnBuffer only
  std::string failure_reason;
};

struct NavParams {
  double reach_threshold = 1.0;  // meters
  int buffer_ticks = 40;         // penalty persistence after detection loss
  double servo_gain = 1.0;       // heading correction per radian of bearing
  double collision_cost_threshold = 90.0;
};

struct TickResult {
  NavPhase phase;
  route::Maneuver active_maneuver = route::Maneuver::kStraight;
  std::optional<double> servo_heading;  // absolute desired heading
};

// One state-machine transition. Detection of the current target drives
// reach/approach decisions; the reach test uses the detection's range
// estimate, so a convincing false positive advances the plan. Servo headings
// are only emitted when the straight line to the estimated landmark is
// collision-free on c_se.
TickResult tick(const NavPhase& phase, const sim::Observation& obs,
                const sim::VehicleState& state, const costmap::CostMap& c_se,
                const route::ManeuverSequence& plan, const NavParams& params);

enum class PlannerKind { kMppi, kPrimitives };
enum class CostmapKind { kSemanticElevation, kHeightOnly };

struct EpisodeConfig {
  sim::VehicleState start;
  route::ManeuverSequence plan;
  sim::SensorNoiseModel noise;
  sim::VehicleModel vehicle;
  NavParams nav;
  costmap::SemanticCostTable semantic_table;
  costmap::ElevationCostParams elevation;
  costmap::ManeuverPenaltyParams penalty;
  costmap::HeightOnlyParams height_only;
  planner::MppiParams mppi;
  planner::PrimitiveLibrary primitives;
  PlannerKind planner_kind = PlannerKind::kMppi;
  CostmapKind costmap_kind = CostmapKind::kSemanticElevation;
  double dt = 0.025;  // seconds per control tick
  int tick_budget = 4000;
  std::uint64_t seed = 0;
};

struct TrajectoryRow {
  int tick = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double speed = 0.0;
  double steering = 0.0;
  route::Maneuver active_maneuver = route::Maneuver::kStraight;
  PhaseKind phase = PhaseKind::kSeeking;
  std::string target_landmark;
  double min_path_cost = 0.0;
  double ess = 0.0;
};

struct EpisodeResult {
  bool success = false;
  bool done = false;
  int landmarks_reached = 0;
  int ticks = 0;
  std::string failure_reason;
  std::vector<TrajectoryRow> trajectory;
};

// Full closed loop: observe, build cost maps, advance the state machine,
// apply the maneuver penalty, plan, step. Terminates on Done, Failed, a
// terrain hazard under the vehicle, or tick budget exhaustion (timeout).
EpisodeResult run_episode(const sim::WorldMap& world,
                          const EpisodeConfig& config);

}  // namespace langnav::nav

#endif  // LANGNAV_NAV_NAVIGATOR_H_
