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

#ifndef LANGNAV_PLANNER_MPPI_H_
#define LANGNAV_PLANNER_MPPI_H_

#include <cstdint>
#include <span>
#include <vector>

#include "langnav/costmap/costmap.hpp"
#include "langnav/sim/world.hpp"

namespace langnav::planner {

struct MppiParams {
  int rollout_count = 5000;  // K
  int horizon_steps = 20;    // T
  double dt = 0.05;          // seconds per rollout step
  double lambda = 10.0;      // temperature, cost units
  double steer_sigma = 0.15;
  double speed_sigma = 0.2;
  double control_effort_weight = 0.1;  // on steering^2
  double nominal_speed = 1.0;          // default warm start speed
  std::vector<sim::ControlInput> nominal;  // warm start; padded/truncated to T
  int threads = 1;
  bool record_rollouts = false;  // keep per-rollout data in the result
};

struct RolloutSummary {
  double min_cost = 0.0;
  double mean_cost = 0.0;
  double max_cost = 0.0;
  double ess = 0.0;  // effective sample size, 1 / sum(w_i^2)
};

struct MppiResult {
  sim::ControlInput control;                // first step of the update
  std::vector<sim::ControlInput> sequence;  // next tick's nominal
  RolloutSummary summary;
  // Populated only when params.record_rollouts.
  std::vector<double> costs;
  std::vector<double> weights;
  std::vector<std::vector<sim::ControlInput>> rollout_controls;
  std::vector<std::vector<sim::VehicleState>> rollout_states;
};

// Softmax of -(cost - min cost) / lambda, normalized to sum 1.
std::vector<double> mppi_weights(std::span<const double> costs, double lambda);

// Samples K perturbed control sequences around the nominal, rolls each
// through the vehicle model for T steps, scores them on the cost map
// (out-of-window poses charge c_max, plus the steering effort term), and
// returns the weight-averaged sequence. All sampling is keyed by
// (seed, rollout, step); rollouts may be evaluated on params.threads
// workers and the result is bit-identical to the sequential evaluation.
MppiResult plan_mppi(const costmap::CostMap& c_se,
                     const sim::VehicleState& state,
                     const sim::VehicleModel& model, const MppiParams& params,
                     std::uint64_t seed);

struct PrimitiveLibrary {
  int arc_count = 15;  // constant-curvature arcs, leftmost first
  double speed = 1.0;
  int horizon_steps = 20;
  double dt = 0.05;
};

// Least-cost arc over the map; ties break toward the smallest |steering|,
// then the lowest arc index. Returns the arc's constant control.
sim::ControlInput plan_primitives(const costmap::CostMap& c_se,
                                  const sim::VehicleState& state,
                                  const sim::VehicleModel& model,
                                  const PrimitiveLibrary& library);

// The steering angles of the library, index 0 = full left.
std::vector<double> primitive_steerings(const PrimitiveLibrary& library,
                                        const sim::VehicleModel& model);

}  // namespace langnav::planner

#endif  // LANGNAV_PLANNER_MPPI_H_
