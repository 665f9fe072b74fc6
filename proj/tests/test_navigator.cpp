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

#include <memory>

#include "doctest.h"
#include "langnav/nav/navigator.hpp"
#include "langnav/route/route.hpp"

using namespace langnav;
using nav::PhaseKind;
using route::Maneuver;

namespace {

route::ManeuverSequence plan_from(const std::string& text) {
  return route::to_maneuver_sequence(route::parse_crd(text));
}

sim::Observation empty_obs(int cells = 40) {
  sim::Observation obs;
  obs.cells = cells;
  obs.resolution = 0.1;
  obs.semantics.assign(static_cast<std::size_t>(cells) * cells,
                       sim::SemanticClass::kSmooth);
  obs.elevation.assign(static_cast<std::size_t>(cells) * cells, 0.0);
  return obs;
}

costmap::CostMap flat_map(int cells = 40) {
  return costmap::CostMap(cells, cells, 0.1, 100.0);
}

// A single-landmark world: ball 1.5 m ahead of the start.
sim::WorldMap ball_world() {
  sim::WorldMap world(80, 80, 0.1, sim::SemanticClass::kSmooth);
  world.add_landmark({"white ball", 5.5, 4.0, 0.3});
  return world;
}

nav::EpisodeConfig base_config() {
  nav::EpisodeConfig config;
  config.start = {4.0, 4.0, 0.0, 0.0};
  config.plan = plan_from("Find a white ball, and stop.");
  config.mppi.rollout_count = 128;
  config.mppi.horizon_steps = 12;
  config.tick_budget = 1200;
  return config;
}

}  // namespace

TEST_CASE("an already-reached final landmark finishes on the first tick") {
  const auto plan = plan_from("Find a white ball, and stop.");
  auto obs = empty_obs();
  obs.detections.push_back({"white ball", 0.0, 0.4, true});

  const nav::TickResult result =
      nav::tick(nav::NavPhase{}, obs, {4.0, 4.0, 0.0, 0.0}, flat_map(), plan,
                nav::NavParams{});
  CHECK(result.phase.kind == PhaseKind::kDone);
  CHECK(result.active_maneuver == Maneuver::kStop);
  CHECK_FALSE(result.servo_heading.has_value());
}

TEST_CASE("a detected turn landmark within reach opens the turn buffer") {
  const auto plan = plan_from(
      "Go straight to a trashcan, then turn left. Go straight to a box, "
      "then stop.");
  auto obs = empty_obs();
  obs.detections.push_back({"trashcan", 0.1, 0.5, true});

  nav::NavParams params;
  params.buffer_ticks = 7;
  const auto result = nav::tick(nav::NavPhase{}, obs,
                                {4.0, 4.0, 0.0, 0.0}, flat_map(), plan,
                                params);
  CHECK(result.phase.kind == PhaseKind::kTurnBuffer);
  CHECK(result.phase.step_index == 0);
  CHECK(result.phase.buffer_remaining == 7);
  CHECK(result.active_maneuver == Maneuver::kLeft);
}

TEST_CASE("the turn buffer counts down after the landmark disappears") {
  const auto plan = plan_from(
      "Go straight to a trashcan, then turn left. Go straight to a box, "
      "then stop.");
  nav::NavParams params;
  params.buffer_ticks = 3;
  nav::NavPhase phase{PhaseKind::kTurnBuffer, 0, Maneuver::kLeft, 3};

  const auto obs = empty_obs();  // no detections
  auto r1 = nav::tick(phase, obs, {4, 4, 0, 0}, flat_map(), plan, params);
  CHECK(r1.phase.kind == PhaseKind::kTurnBuffer);
  CHECK(r1.active_maneuver == Maneuver::kLeft);
  auto r2 = nav::tick(r1.phase, obs, {4, 4, 0, 0}, flat_map(), plan, params);
  CHECK(r2.phase.kind == PhaseKind::kTurnBuffer);
  auto r3 = nav::tick(r2.phase, obs, {4, 4, 0, 0}, flat_map(), plan, params);
  CHECK(r3.phase.kind == PhaseKind::kSeeking);
  CHECK(r3.phase.step_index == 1);
  CHECK(r3.active_maneuver == Maneuver::kStraight);

  // Re-detection restarts the countdown.
  auto seen = empty_obs();
  seen.detections.push_back({"trashcan", 0.0, 0.6, true});
  auto r4 = nav::tick(nav::NavPhase{PhaseKind::kTurnBuffer, 0,
                                    Maneuver::kLeft, 1},
                      seen, {4, 4, 0, 0}, flat_map(), plan, params);
  CHECK(r4.phase.kind == PhaseKind::kTurnBuffer);
  CHECK(r4.phase.buffer_remaining == 3);
}

TEST_CASE("servoing aims the heading at the detection bearing") {
  const auto plan = plan_from("Find a white ball, and stop.");
  auto obs = empty_obs();
  obs.detections.push_back({"white ball", 0.3, 2.5, true});

  nav::NavParams params;
  params.servo_gain = 1.0;
  const sim::VehicleState state{4.0, 4.0, 0.25, 0.0};
  const auto result =
      nav::tick(nav::NavPhase{}, obs, state, flat_map(), plan, params);
  CHECK(result.phase.kind == PhaseKind::kServoing);
  REQUIRE(result.servo_heading.has_value());
  CHECK(*result.servo_heading ==
        doctest::Approx(0.25 + 1.0 * 0.3).epsilon(1e-12));
  CHECK(result.active_maneuver == Maneuver::kStraight);
}

TEST_CASE("a blocked line to the landmark suppresses servoing") {
  const auto plan = plan_from("Find a white ball, and stop.");
  auto obs = empty_obs();
  obs.detections.push_back({"white ball", 0.0, 2.5, true});

  auto blocked_map = flat_map();
  // Wall one meter ahead of the window center.
  for (int x = 0; x < blocked_map.width(); ++x) {
    blocked_map.set(x, 30, 100.0);
  }
  const auto result = nav::tick(nav::NavPhase{}, obs, {4, 4, 0, 0},
                                blocked_map, plan, nav::NavParams{});
  CHECK(result.phase.kind == PhaseKind::kSeeking);
  CHECK_FALSE(result.servo_heading.has_value());
}

TEST_CASE("noiseless single-landmark episode succeeds deterministically") {
  const sim::WorldMap world = ball_world();
  const nav::EpisodeConfig config = base_config();

  const nav::EpisodeResult result = nav::run_episode(world, config);
  CHECK(result.success);
  CHECK(result.done);
  CHECK(result.landmarks_reached == 1);
  CHECK(result.failure_reason.empty());
  CHECK(result.trajectory.back().phase == PhaseKind::kDone);
  CHECK(result.trajectory.back().active_maneuver == Maneuver::kStop);
  CHECK(result.trajectory.back().speed == 0.0);

  const nav::EpisodeResult replay = nav::run_episode(world, config);
  REQUIRE(replay.trajectory.size() == result.trajectory.size());
  for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
    CHECK(result.trajectory[i].x == replay.trajectory[i].x);
    CHECK(result.trajectory[i].y == replay.trajectory[i].y);
    CHECK(result.trajectory[i].heading == replay.trajectory[i].heading);
  }
}

TEST_CASE("a blind vehicle times out with nothing reached") {
  const sim::WorldMap world = ball_world();
  nav::EpisodeConfig config = base_config();
  config.noise.detect_fn_prob = 1.0;
  config.tick_budget = 120;  // exhausted before the world edge

  const nav::EpisodeResult result = nav::run_episode(world, config);
  CHECK_FALSE(result.success);
  CHECK(result.landmarks_reached == 0);
  CHECK(result.failure_reason == "timeout");
  CHECK(result.ticks == 120);
}

TEST_CASE("driving into an obstacle fails the episode") {
  sim::WorldMap world(80, 80, 0.1, sim::SemanticClass::kSmooth);
  // An obstacle wall the vehicle starts inside of.
  for (int y = 0; y < 80; ++y) {
    for (int x = 38; x < 42; ++x) {
      world.set_semantic(x, y, sim::SemanticClass::kObstacle);
    }
  }
  world.add_landmark({"white ball", 7.0, 4.0, 0.3});
  nav::EpisodeConfig config = base_config();
  config.start = {3.9, 4.0, 0.0, 0.0};

  const nav::EpisodeResult result = nav::run_episode(world, config);
  CHECK_FALSE(result.success);
  CHECK(result.failure_reason == "collision");
}

TEST_CASE("emitted maneuvers are a deduplicated prefix of the plan") {
  sim::WorldMap world(140, 100, 0.1, sim::SemanticClass::kSmooth);
  world.add_landmark({"trashcan", 8.0, 5.0, 0.3});
  world.add_landmark({"box", 8.0, 8.5, 0.3});

  nav::EpisodeConfig config = base_config();
  config.start = {4.0, 5.0, 0.0, 0.0};
  config.plan = plan_from(
      "Go straight to a trashcan, then turn left. Go straight to a box, "
      "then stop.");
  config.nav.buffer_ticks = 30;
  config.penalty.sigma = 20.0;
  config.tick_budget = 3000;

  const nav::EpisodeResult result = nav::run_episode(world, config);

  std::vector<Maneuver> emitted;
  for (const nav::TrajectoryRow& row : result.trajectory) {
    if (emitted.empty() || emitted.back() != row.active_maneuver) {
      emitted.push_back(row.active_maneuver);
    }
  }
  REQUIRE(!emitted.empty());
  CHECK(emitted.size() <= config.plan.maneuvers.size());
  for (std::size_t i = 0; i < emitted.size(); ++i) {
    CHECK(emitted[i] == config.plan.maneuvers[i]);
  }

  // The left-turn penalty stays active for at least buffer_ticks.
  int left_run = 0, best_left_run = 0;
  for (const nav::TrajectoryRow& row : result.trajectory) {
    left_run = row.active_maneuver == Maneuver::kLeft ? left_run + 1 : 0;
    best_left_run = std::max(best_left_run, left_run);
  }
  CHECK(best_left_run >= config.nav.buffer_ticks);
}
