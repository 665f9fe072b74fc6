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

#include "langnav/planner/mppi.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "langnav/core/errors.hpp"
#include "langnav/core/rng.hpp"

namespace langnav::planner {
namespace {

constexpr std::uint64_t kStreamRollout = 11;

struct Workspace {
  std::vector<double> costs;              // K
  std::vector<sim::ControlInput> controls;  // K * T, rollout-major
};

void evaluate_rollouts(const costmap::CostMap& c_se,
                       const costmap::LocalFrame& frame,
                       const sim::VehicleState& state,
                       const sim::VehicleModel& model,
                       const MppiParams& params,
                       std::span<const sim::ControlInput> nominal,
                       std::uint64_t seed, int k_begin, int k_end,
                       Workspace& ws, MppiResult* recording) {
  const int t_steps = params.horizon_steps;
  for (int k = k_begin; k < k_end; ++k) {
    sim::VehicleState s = state;
    double cost = 0.0;
    sim::ControlInput* controls = &ws.controls[static_cast<std::size_t>(k) *
                                               t_steps];
    for (int t = 0; t < t_steps; ++t) {
      const auto noise = rng::normal_pair(seed, kStreamRollout,
                                          static_cast<std::uint64_t>(k),
                                          static_cast<std::uint64_t>(t));
      const sim::ControlInput u = model.clamp(
          {nominal[t].steering + params.steer_sigma * noise.z0,
           nominal[t].speed + params.speed_sigma * noise.z1});
      controls[t] = u;
      s = model.step(s, u, params.dt);
      cost += costmap::cost_at_world(c_se, frame, s.x, s.y);
      cost += params.control_effort_weight * u.steering * u.steering;
      if (recording != nullptr) {
        recording->rollout_states[k].push_back(s);
      }
    }
    ws.costs[k] = cost;
  }
}

}  // namespace

std::vector<double> mppi_weights(std::span<const double> costs,
                                 double lambda) {
  if (costs.empty()) return {};
  if (lambda <= 0.0) throw Error("lambda must be positive");
  const double min_cost = *std::min_element(costs.begin(), costs.end());
  std::vector<double> weights(costs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    weights[i] = std::exp(-(costs[i] - min_cost) / lambda);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

MppiResult plan_mppi(const costmap::CostMap& c_se,
                     const sim::VehicleState& state,
                     const sim::VehicleModel& model, const MppiParams& params,
                     std::uint64_t seed) {
  if (params.rollout_count < 1 || params.horizon_steps < 1) {
    throw Error("rollout count and horizon must be at least 1");
  }
  const int k_count = params.rollout_count;
  const int t_steps = params.horizon_steps;

  std::vector<sim::ControlInput> nominal(params.nominal);
  nominal.resize(t_steps,
                 nominal.empty()
                     ? sim::ControlInput{0.0, params.nominal_speed}
                     : nominal.back());

  const costmap::LocalFrame frame{state.x, state.y, state.heading};

  Workspace ws;
  ws.costs.resize(k_count);
  ws.controls.resize(static_cast<std::size_t>(k_count) * t_steps);

  MppiResult result;
  MppiResult* recording = nullptr;
  if (params.record_rollouts) {
    result.rollout_states.resize(k_count);
    recording = &result;
  }

  const int threads =
      std::clamp(params.threads, 1, std::max(1, k_count));
  if (threads == 1 || recording != nullptr) {
    evaluate_rollouts(c_se, frame, state, model, params, nominal, seed, 0,
                      k_count, ws, recording);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const int chunk = (k_count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(k_count, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        evaluate_rollouts(c_se, frame, state, model, params, nominal, seed,
                          begin, end, ws, nullptr);
      });
    }
    for (std::thread& t : workers) t.join();
  }

  std::vector<double> weights = mppi_weights(ws.costs, params.lambda);

  // Fixed-order reduction: identical output for any thread count.
  result.sequence.assign(t_steps, sim::ControlInput{0.0, 0.0});
  for (int k = 0; k < k_count; ++k) {
    const double w = weights[k];
    const sim::ControlInput* controls =
        &ws.controls[static_cast<std::size_t>(k) * t_steps];
    for (int t = 0; t < t_steps; ++t) {
      result.sequence[t].steering += w * controls[t].steering;
      result.sequence[t].speed += w * controls[t].speed;
    }
  }
  result.control = result.sequence.front();

  double sum = 0.0, sum_sq_w = 0.0;
  double min_c = ws.costs.front(), max_c = ws.costs.front();
  for (int k = 0; k < k_count; ++k) {
    sum += ws.costs[k];
    sum_sq_w += weights[k] * weights[k];
    min_c = std::min(min_c, ws.costs[k]);
    max_c = std::max(max_c, ws.costs[k]);
  }
  result.summary.min_cost = min_c;
  result.summary.max_cost = max_c;
  result.summary.mean_cost = sum / k_count;
  result.summary.ess = 1.0 / sum_sq_w;

  if (params.record_rollouts) {
    result.costs = std::move(ws.costs);
    result.weights = std::move(weights);
    result.rollout_controls.resize(k_count);
    for (int k = 0; k < k_count; ++k) {
      result.rollout_controls[k].assign(
          ws.controls.begin() + static_cast<std::ptrdiff_t>(k) * t_steps,
          ws.controls.begin() + static_cast<std::ptrdiff_t>(k + 1) * t_steps);
    }
  }
  return result;
}

std::vector<double> primitive_steerings(const PrimitiveLibrary& library,
                                        const sim::VehicleModel& model) {
  std::vector<double> steerings(library.arc_count);
  if (library.arc_count == 1) {
    steerings[0] = 0.0;
    return steerings;
  }
  for (int i = 0; i < library.arc_count; ++i) {
    // Index 0 is full left (positive steering turns left).
    steerings[i] = model.steer_max *
                   (1.0 - 2.0 * i / (library.arc_count - 1));
  }
  return steerings;
}

sim::ControlInput plan_primitives(const costmap::CostMap& c_se,
                                  const sim::VehicleState& state,
                                  const sim::VehicleModel& model,
                                  const PrimitiveLibrary& library) {
  if (library.arc_count < 1) throw Error("primitive library is empty");
  const std::vector<double> steerings = primitive_steerings(library, model);
  const costmap::LocalFrame frame{state.x, state.y, state.heading};

  int best_index = -1;
  double best_cost = 0.0;
  for (int i = 0; i < library.arc_count; ++i) {
    const sim::ControlInput u{steerings[i], library.speed};
    sim::VehicleState s = state;
    double cost = 0.0;
    for (int t = 0; t < library.horizon_steps; ++t) {
      s = model.step(s, u, library.dt);
      cost += costmap::cost_at_world(c_se, frame, s.x, s.y);
    }
    const bool better =
        best_index < 0 || cost < best_cost ||
        (cost == best_cost &&
         (std::abs(steerings[i]) < std::abs(steerings[best_index])));
    if (better) {
      best_index = i;
      best_cost = cost;
    }
  }
  return sim::ControlInput{steerings[best_index], library.speed};
}

}  // namespace langnav::planner
