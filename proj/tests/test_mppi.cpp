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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "langnav/core/rng.hpp"
#include "langnav/planner/mppi.hpp"

using namespace langnav;

namespace {

costmap::CostMap zero_map(int cells = 80) {
  return costmap::CostMap(cells, cells, 0.1, 100.0);
}

const sim::VehicleModel kModel{0.5, 0.45, 2.0};
const sim::VehicleState kState{10.0, 10.0, 0.0, 1.0};

planner::MppiParams small_params() {
  planner::MppiParams params;
  params.rollout_count = 64;
  params.horizon_steps = 12;
  params.record_rollouts = true;
  return params;
}

}  // namespace

TEST_CASE("weights normalize to one and match the two-cost closed form") {
  const double lambda = 10.0;
  const std::vector<double> costs{0.0, lambda};
  const auto weights = planner::mppi_weights(costs, lambda);
  REQUIRE(weights.size() == 2);
  const double e = std::exp(-1.0);
  CHECK(weights[0] == doctest::Approx(1.0 / (1.0 + e)).epsilon(1e-4));
  CHECK(weights[1] == doctest::Approx(e / (1.0 + e)).epsilon(1e-4));
  CHECK(weights[0] == doctest::Approx(0.7311).epsilon(1e-4));
  CHECK(weights[1] == doctest::Approx(0.2689).epsilon(1e-4));
  CHECK(std::abs(weights[0] + weights[1] - 1.0) <= 1e-12);
}

TEST_CASE("weights are invariant to shifting and joint scaling") {
  std::vector<double> costs(50);
  for (std::size_t i = 0; i < costs.size(); ++i) {
    costs[i] = 200.0 * rng::uniform(91, i);
  }
  const double lambda = 7.5;
  const auto base = planner::mppi_weights(costs, lambda);
  CHECK(std::abs(std::accumulate(base.begin(), base.end(), 0.0) - 1.0) <=
        1e-12);

  std::vector<double> shifted = costs;
  for (double& c : shifted) c += 123.456;
  const auto shifted_weights = planner::mppi_weights(shifted, lambda);

  std::vector<double> scaled = costs;
  for (double& c : scaled) c *= 3.0;
  const auto scaled_weights = planner::mppi_weights(scaled, lambda * 3.0);

  const auto argmax = [](const std::vector<double>& w) {
    return std::max_element(w.begin(), w.end()) - w.begin();
  };
  CHECK(argmax(base) == argmax(shifted_weights));
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(std::abs(base[i] - shifted_weights[i]) <= 1e-12);
    CHECK(std::abs(base[i] - scaled_weights[i]) <= 1e-12);
  }
}

TEST_CASE("uniform cost map with zero control penalty gives uniform weights") {
  auto params = small_params();
  params.control_effort_weight = 0.0;
  const auto result =
      planner::plan_mppi(zero_map(), kState, kModel, params, 42);

  const double expected = 1.0 / params.rollout_count;
  for (double w : result.weights) {
    CHECK(std::abs(w - expected) <= 1e-12);
  }

  // The update is then the plain mean of the sampled controls.
  for (int t = 0; t < params.horizon_steps; ++t) {
    double mean_steer = 0.0, mean_speed = 0.0;
    for (int k = 0; k < params.rollout_count; ++k) {
      mean_steer += result.rollout_controls[k][t].steering;
      mean_speed += result.rollout_controls[k][t].speed;
    }
    mean_steer /= params.rollout_count;
    mean_speed /= params.rollout_count;
    CHECK(result.sequence[t].steering ==
          doctest::Approx(mean_steer).epsilon(1e-12));
    CHECK(result.sequence[t].speed ==
          doctest::Approx(mean_speed).epsilon(1e-12));
  }
  CHECK(std::abs(result.summary.ess - params.rollout_count) < 1e-6);
}

TEST_CASE("fixed seed replays the full batch bit-identically") {
  auto params = small_params();
  const auto a = planner::plan_mppi(zero_map(), kState, kModel, params, 7);
  const auto b = planner::plan_mppi(zero_map(), kState, kModel, params, 7);
  CHECK(a.control == b.control);
  CHECK(a.sequence == b.sequence);
  CHECK(a.costs == b.costs);
  CHECK(a.weights == b.weights);

  const auto c = planner::plan_mppi(zero_map(), kState, kModel, params, 8);
  CHECK_FALSE(a.costs == c.costs);
}

TEST_CASE("parallel rollout evaluation is bit-equal to sequential") {
  costmap::CostMap map = zero_map();
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      map.set(x, y, 100.0 * rng::uniform(55, x, y));
    }
  }
  planner::MppiParams sequential;
  sequential.rollout_count = 512;
  sequential.horizon_steps = 20;
  sequential.threads = 1;
  planner::MppiParams parallel = sequential;
  parallel.threads = 8;

  const auto a = planner::plan_mppi(map, kState, kModel, sequential, 99);
  const auto b = planner::plan_mppi(map, kState, kModel, parallel, 99);
  REQUIRE(a.sequence.size() == b.sequence.size());
  for (std::size_t t = 0; t < a.sequence.size(); ++t) {
    CHECK(a.sequence[t].steering == b.sequence[t].steering);
    CHECK(a.sequence[t].speed == b.sequence[t].speed);
  }
  CHECK(a.summary.min_cost == b.summary.min_cost);
  CHECK(a.summary.mean_cost == b.summary.mean_cost);
  CHECK(a.summary.ess == b.summary.ess);
}

TEST_CASE("a blocked right half pushes the solution leftward") {
  // Vehicle at the window center heading +x; world cells to its right
  // (negative world y offsets) get c_max.
  costmap::CostMap map = zero_map();
  for (int y = 0; y < map.height(); ++y) {
    for (int x = map.width() / 2 + 1; x < map.width(); ++x) {
      map.set(x, y, 100.0);
    }
  }
  planner::MppiParams params;
  params.rollout_count = 256;
  params.horizon_steps = 20;

  double mean_lateral = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto result = planner::plan_mppi(map, kState, kModel, params, seed);
    // Roll the chosen sequence out; lateral displacement left of heading 0
    // is +y in world coordinates.
    sim::VehicleState s = kState;
    for (const sim::ControlInput& u : result.sequence) {
      s = kModel.step(s, u, params.dt);
    }
    mean_lateral += s.y - kState.y;
  }
  mean_lateral /= 100.0;
  CHECK(mean_lateral > 0.0);
}

TEST_CASE("raising the cost along one rollout's path cannot raise its weight") {
  costmap::CostMap map = zero_map(60);
  for (int y = 0; y < 60; ++y) {
    for (int x = 0; x < 60; ++x) map.set(x, y, 30.0 * rng::uniform(66, x, y));
  }
  auto params = small_params();
  params.rollout_count = 32;
  params.horizon_steps = 10;
  const sim::VehicleState state{5.0, 5.0, 0.3, 1.0};

  const auto base = planner::plan_mppi(map, state, kModel, params, 3);

  for (int target = 0; target < params.rollout_count; target += 5) {
    costmap::CostMap raised = map;
    const costmap::LocalFrame frame{state.x, state.y, state.heading};
    for (const sim::VehicleState& pose : base.rollout_states[target]) {
      int cx, cy;
      if (costmap::world_to_cell(raised, frame, pose.x, pose.y, &cx, &cy)) {
        raised.set(cx, cy, std::min(raised.c_max(), raised.at(cx, cy) + 25.0));
      }
    }
    const auto bumped = planner::plan_mppi(raised, state, kModel, params, 3);
    CHECK(bumped.weights[target] <= base.weights[target] + 1e-12);
  }
}

TEST_CASE("primitive planner picks the straight arc on an empty map") {
  planner::PrimitiveLibrary library;
  const auto control =
      planner::plan_primitives(zero_map(), kState, kModel, library);
  CHECK(control.steering == 0.0);
  CHECK(control.speed == library.speed);
}

TEST_CASE("primitive planner avoids a blocked side") {
  // Block the vehicle's column and everything to its left; only arcs that
  // bend right escape the charged region within the horizon.
  costmap::CostMap map = zero_map();
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width() / 2 + 2; ++x) map.set(x, y, 100.0);
  }
  planner::PrimitiveLibrary library;
  const auto control =
      planner::plan_primitives(map, kState, kModel, library);
  CHECK(control.steering < 0.0);  // a right-turning arc
}

TEST_CASE("primitive planner equals the exhaustive library minimum") {
  planner::PrimitiveLibrary library;
  library.arc_count = 15;
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    costmap::CostMap map = zero_map(60);
    for (int y = 0; y < 60; ++y) {
      for (int x = 0; x < 60; ++x) {
        map.set(x, y, 100.0 * rng::uniform(77, trial, x, y));
      }
    }
    const sim::VehicleState state{8.0, 8.0, 0.7, 1.0};
    const auto picked =
        planner::plan_primitives(map, state, kModel, library);

    // Independent enumeration of every arc's summed cost.
    const auto steerings = planner::primitive_steerings(library, kModel);
    const costmap::LocalFrame frame{state.x, state.y, state.heading};
    double best = -1.0;
    std::vector<double> best_steers;
    for (double steer : steerings) {
      sim::VehicleState s = state;
      double cost = 0.0;
      for (int t = 0; t < library.horizon_steps; ++t) {
        s = kModel.step(s, {steer, library.speed}, library.dt);
        cost += costmap::cost_at_world(map, frame, s.x, s.y);
      }
      if (best < 0.0 || cost < best - 1e-12) {
        best = cost;
        best_steers = {steer};
      } else if (std::abs(cost - best) <= 1e-12) {
        best_steers.push_back(steer);
      }
    }
    CHECK(std::find(best_steers.begin(), best_steers.end(), picked.steering) !=
          best_steers.end());
  }
}

TEST_CASE("a noise spike on the straight arc flips the primitive choice") {
  // Clean map: straight wins by tie-break. One spiked cell on the straight
  // arc makes a curved arc strictly cheaper.
  costmap::CostMap map = zero_map();
  planner::PrimitiveLibrary library;
  const sim::VehicleState state{10.0, 10.0, 0.0, 1.0};
  CHECK(planner::plan_primitives(map, state, kModel, library).steering ==
        0.0);

  const costmap::LocalFrame frame{state.x, state.y, state.heading};
  int cx, cy;
  REQUIRE(costmap::world_to_cell(map, frame, state.x + 0.5, state.y, &cx,
                                 &cy));
  map.set(cx, cy, 60.0);
  const auto picked = planner::plan_primitives(map, state, kModel, library);
  CHECK(picked.steering != 0.0);
}
