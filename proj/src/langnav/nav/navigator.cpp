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

#include "langnav/nav/navigator.hpp"

#include <algorithm>
#include <cmath>

#include "langnav/core/errors.hpp"
#include "langnav/core/geometry.hpp"
#include "langnav/core/rng.hpp"
#include "langnav/planner/collision.hpp"

namespace langnav::nav {
namespace {

constexpr std::uint64_t kStreamObservation = 21;
constexpr std::uint64_t kStreamPlanner = 22;

const sim::DetectionEvent* find_target(const sim::Observation& obs,
                                       const std::string& target) {
  for (const sim::DetectionEvent& d : obs.detections) {
    if (d.landmark_name == target) return &d;
  }
  return nullptr;
}

route::Maneuver orientation_maneuver(const route::ManeuverSequence& plan,
                                     std::size_t step_index) {
  return plan.maneuvers.at(2 * step_index + 1);
}

}  // namespace

std::string to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::kSeeking:
      return "seeking";
    case PhaseKind::kServoing:
      return "servoing";
    case PhaseKind::kTurnBuffer:
      return "turn_buffer";
    case PhaseKind::kDone:
      return "done";
    case PhaseKind::kFailed:
      return "failed";
  }
  return "failed";
}

TickResult tick(const NavPhase& phase, const sim::Observation& obs,
                const sim::VehicleState& state, const costmap::CostMap& c_se,
                const route::ManeuverSequence& plan, const NavParams& params) {
  TickResult result;
  result.phase = phase;

  switch (phase.kind) {
    case PhaseKind::kDone:
    case PhaseKind::kFailed:
      result.active_maneuver = route::Maneuver::kStop;
      return result;

    case PhaseKind::kTurnBuffer: {
      // The penalty persists while the turn's landmark stays detected and
      // for buffer_ticks after it was last seen; re-detection restarts the
      // buffer.
      const std::string& turn_landmark = plan.landmarks.at(phase.step_index);
      if (find_target(obs, turn_landmark) != nullptr) {
        result.phase.buffer_remaining = params.buffer_ticks;
      } else {
        result.phase.buffer_remaining = phase.buffer_remaining - 1;
      }
      if (result.phase.buffer_remaining > 0) {
        result.active_maneuver = phase.turn;
        return result;
      }
      if (phase.step_index + 1 >= plan.landmarks.size()) {
        throw PlanExhaustedError("turn maneuver after the final landmark");
      }
      result.phase = NavPhase{PhaseKind::kSeeking, phase.step_index + 1};
      result.active_maneuver = route::Maneuver::kStraight;
      return result;
    }

    case PhaseKind::kSeeking:
    case PhaseKind::kServoing:
      break;
  }

  if (phase.step_index >= plan.landmarks.size()) {
    throw PlanExhaustedError("maneuver index overran the plan");
  }
  const std::string& target = plan.landmarks[phase.step_index];
  const sim::DetectionEvent* detection = find_target(obs, target);

  if (detection == nullptr) {
    result.phase = NavPhase{PhaseKind::kSeeking, phase.step_index};
    result.active_maneuver = route::Maneuver::kStraight;
    return result;
  }

  if (detection->range < params.reach_threshold) {
    const route::Maneuver orientation =
        orientation_maneuver(plan, phase.step_index);
    if (orientation == route::Maneuver::kStop) {
      result.phase = NavPhase{PhaseKind::kDone, phase.step_index};
      result.active_maneuver = route::Maneuver::kStop;
    } else {
      result.phase = NavPhase{PhaseKind::kTurnBuffer, phase.step_index,
                              orientation, params.buffer_ticks};
      result.active_maneuver = orientation;
    }
    return result;
  }

  // Within detection but not yet reached: servo toward the landmark if the
  // straight line to it is clear, otherwise keep seeking and let the
  // planner negotiate the terrain.
  const double landmark_dir = state.heading + detection->bearing;
  const double est_x = state.x + detection->range * std::cos(landmark_dir);
  const double est_y = state.y + detection->range * std::sin(landmark_dir);
  const costmap::LocalFrame frame{state.x, state.y, state.heading};
  const bool blocked =
      planner::check_collision_line(c_se, frame, state.x, state.y, est_x,
                                    est_y, params.collision_cost_threshold);
  if (blocked) {
    result.phase = NavPhase{PhaseKind::kSeeking, phase.step_index};
    result.active_maneuver = route::Maneuver::kStraight;
    return result;
  }
  result.phase = NavPhase{PhaseKind::kServoing, phase.step_index};
  result.active_maneuver = route::Maneuver::kStraight;
  result.servo_heading = state.heading + params.servo_gain * detection->bearing;
  return result;
}

EpisodeResult run_episode(const sim::WorldMap& world,
                          const EpisodeConfig& config) {
  EpisodeResult result;
  if (config.plan.landmarks.empty() ||
      config.plan.maneuvers.size() != 2 * config.plan.landmarks.size()) {
    result.failure_reason = "invalid plan";
    result.trajectory = {};
    return result;
  }

  sim::SensorNoiseModel noise = config.noise;
  noise.seed = rng::hash(config.seed, kStreamObservation);

  planner::MppiParams mppi = config.mppi;
  NavPhase phase;
  sim::VehicleState state = config.start;
  std::vector<bool> reached(config.plan.landmarks.size(), false);

  auto record_reach = [&](std::size_t step_index) {
    const sim::Landmark* lm =
        world.find_landmark(config.plan.landmarks[step_index]);
    if (lm != nullptr &&
        sim::check_reached(state, *lm, config.nav.reach_threshold)) {
      reached[step_index] = true;
    }
  };

  for (int t = 0; t < config.tick_budget; ++t) {
    result.ticks = t + 1;

    // Physical ground truth under the vehicle, independent of perception.
    const sim::SemanticClass under =
        world.semantic_at_world(state.x, state.y);
    if (under == sim::SemanticClass::kObstacle) {
      phase = NavPhase{PhaseKind::kFailed, phase.step_index};
      result.failure_reason = "collision";
    } else if (under == sim::SemanticClass::kForbidden) {
      phase = NavPhase{PhaseKind::kFailed, phase.step_index};
      result.failure_reason = "entered forbidden terrain";
    }

    std::optional<std::string> target_hint;
    if (phase.kind == PhaseKind::kSeeking ||
        phase.kind == PhaseKind::kServoing ||
        phase.kind == PhaseKind::kTurnBuffer) {
      target_hint = config.plan.landmarks[phase.step_index];
    }

    sim::Observation obs;
    costmap::CostMap c_se(1, 1, 1.0, 1.0);
    TickResult tick_result;
    try {
      obs = sim::observe(world, state, noise, static_cast<std::uint64_t>(t),
                         target_hint);
      if (config.costmap_kind == CostmapKind::kSemanticElevation) {
        c_se = costmap::aggregate(
            costmap::build_semantic_cost(obs, config.semantic_table),
            costmap::build_elevation_cost(obs, config.elevation,
                                          config.semantic_table.c_max));
      } else {
        c_se = costmap::build_height_only_cost(obs, config.height_only,
                                               config.semantic_table.c_max);
      }
      tick_result = tick(phase, obs, state, c_se, config.plan, config.nav);
    } catch (const Error& e) {
      phase = NavPhase{PhaseKind::kFailed, phase.step_index};
      result.failure_reason = e.what();
      tick_result.phase = phase;
      tick_result.active_maneuver = route::Maneuver::kStop;
    }

    if (phase.kind == PhaseKind::kFailed) {
      tick_result.phase = phase;
      tick_result.active_maneuver = route::Maneuver::kStop;
      tick_result.servo_heading.reset();
    }

    // Plan advancement accounting against ground truth.
    if (tick_result.phase.kind == PhaseKind::kTurnBuffer &&
        phase.kind != PhaseKind::kTurnBuffer) {
      record_reach(tick_result.phase.step_index);
    }
    if (tick_result.phase.kind == PhaseKind::kDone &&
        phase.kind != PhaseKind::kDone) {
      record_reach(tick_result.phase.step_index);
    }

    sim::ControlInput command{0.0, 0.0};
    double min_path_cost = 0.0;
    double ess = 0.0;
    const bool terminal = tick_result.phase.kind == PhaseKind::kDone ||
                          tick_result.phase.kind == PhaseKind::kFailed;
    if (!terminal) {
      const costmap::CostMap planning_map = costmap::apply_maneuver_penalty(
          c_se, tick_result.active_maneuver, config.penalty);
      if (tick_result.servo_heading.has_value()) {
        const double error = wrap_angle(*tick_result.servo_heading -
                                        state.heading);
        command = config.vehicle.clamp(
            {error, config.mppi.nominal_speed});
        // The planner's warm start is stale once servoing takes over.
        mppi.nominal.clear();
      } else if (config.planner_kind == PlannerKind::kMppi) {
        const planner::MppiResult plan_result = planner::plan_mppi(
            planning_map, state, config.vehicle, mppi,
            rng::hash(config.seed, kStreamPlanner,
                      static_cast<std::uint64_t>(t)));
        command = plan_result.control;
        min_path_cost = plan_result.summary.min_cost;
        ess = plan_result.summary.ess;
        // Receding-horizon warm start: shift one step, repeat the tail.
        mppi.nominal.assign(plan_result.sequence.begin() + 1,
                            plan_result.sequence.end());
        mppi.nominal.push_back(plan_result.sequence.back());
      } else {
        command = planner::plan_primitives(planning_map, state,
                                           config.vehicle, config.primitives);
      }
    }

    sim::ControlInput applied{0.0, 0.0};
    if (!terminal) {
      applied = config.vehicle.clamp(command);
    }

    TrajectoryRow row;
    row.tick = t;
    row.x = state.x;
    row.y = state.y;
    row.heading = state.heading;
    row.speed = applied.speed;
    row.steering = applied.steering;
    row.active_maneuver = tick_result.active_maneuver;
    row.phase = tick_result.phase.kind;
    row.target_landmark = target_hint.value_or("");
    row.min_path_cost = min_path_cost;
    row.ess = ess;
    result.trajectory.push_back(std::move(row));

    phase = tick_result.phase;
    if (terminal) break;

    state = config.vehicle.step(state, command, config.dt);
  }

  result.done = phase.kind == PhaseKind::kDone;
  result.landmarks_reached =
      static_cast<int>(std::count(reached.begin(), reached.end(), true));
  result.success = result.done && reached.back();
  if (!result.done && result.failure_reason.empty()) {
    result.failure_reason = "timeout";
  }
  return result;
}

}  // namespace langnav::nav
