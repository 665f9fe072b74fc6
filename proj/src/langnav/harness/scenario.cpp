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

#include "langnav/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "langnav/core/errors.hpp"
#include "langnav/core/geometry.hpp"
#include "langnav/harness/config.hpp"
#include "langnav/route/route.hpp"

namespace langnav::harness {
namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& path,
                  const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ConfigError(path + "." + key, "expected a number");
  }
  return j.at(key).get<double>();
}

std::int64_t get_int(const json& j, const std::string& path,
                     const std::string& key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(path + "." + key, "expected an integer");
  }
  return j.at(key).get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& path,
                       const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) {
    throw ConfigError(path + "." + key, "expected a string");
  }
  return j.at(key).get<std::string>();
}

std::string require_string(const json& j, const std::string& path,
                           const std::string& key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing");
  return get_string(j, path, key, "");
}

double require_number(const json& j, const std::string& path,
                      const std::string& key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing");
  return get_number(j, path, key, 0.0);
}

sim::SemanticClass class_from_string(const std::string& name,
                                     const std::string& path) {
  if (name == "smooth") return sim::SemanticClass::kSmooth;
  if (name == "rough") return sim::SemanticClass::kRough;
  if (name == "bumpy") return sim::SemanticClass::kBumpy;
  if (name == "forbidden") return sim::SemanticClass::kForbidden;
  if (name == "obstacle") return sim::SemanticClass::kObstacle;
  if (name == "background") return sim::SemanticClass::kBackground;
  throw ConfigError(path, "unknown semantic class: " + name);
}

// Deep merge: values in `overlay` win; objects merge recursively.
json merge_defaults(const json& defaults, const json& overlay) {
  if (!defaults.is_object() || !overlay.is_object()) return overlay;
  json out = defaults;
  for (const auto& [key, value] : overlay.items()) {
    if (out.contains(key) && out[key].is_object() && value.is_object()) {
      out[key] = merge_defaults(out[key], value);
    } else {
      out[key] = value;
    }
  }
  return out;
}

struct PatchShape {
  bool is_rect = true;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // rect
  double cx = 0, cy = 0, r = 0;           // circle

  bool contains(double x, double y) const {
    if (is_rect) return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
  }
  double center_x() const { return is_rect ? (x0 + x1) / 2.0 : cx; }
  double center_y() const { return is_rect ? (y0 + y1) / 2.0 : cy; }
  double min_x() const { return is_rect ? x0 : cx - r; }
  double max_x() const { return is_rect ? x1 : cx + r; }
  double min_y() const { return is_rect ? y0 : cy - r; }
  double max_y() const { return is_rect ? y1 : cy + r; }
};

void apply_patch(sim::WorldMap& world, const json& patch,
                 const std::string& path) {
  PatchShape shape;
  const std::string kind = require_string(patch, path, "shape");
  if (kind == "rect") {
    shape.is_rect = true;
    shape.x0 = require_number(patch, path, "x0");
    shape.y0 = require_number(patch, path, "y0");
    shape.x1 = require_number(patch, path, "x1");
    shape.y1 = require_number(patch, path, "y1");
  } else if (kind == "circle") {
    shape.is_rect = false;
    shape.cx = require_number(patch, path, "cx");
    shape.cy = require_number(patch, path, "cy");
    shape.r = require_number(patch, path, "r");
  } else {
    throw ConfigError(path + ".shape", "expected rect or circle");
  }

  const bool has_class = patch.contains("class");
  sim::SemanticClass cls = sim::SemanticClass::kSmooth;
  if (has_class) {
    cls = class_from_string(get_string(patch, path, "class", ""), path);
  }
  const bool set_elev = patch.contains("elevation");
  const double elev = get_number(patch, path, "elevation", 0.0);
  const bool has_bump = patch.contains("bump_height");
  const double bump_height = get_number(patch, path, "bump_height", 0.0);
  const double bump_sigma = get_number(patch, path, "bump_sigma", 0.5);
  const bool has_ramp = patch.contains("ramp_from") ||
                        patch.contains("ramp_to");
  const double ramp_from = get_number(patch, path, "ramp_from", 0.0);
  const double ramp_to = get_number(patch, path, "ramp_to", 0.0);
  const std::string ramp_axis = get_string(patch, path, "ramp_axis", "x");
  if (has_ramp && ramp_axis != "x" && ramp_axis != "y") {
    throw ConfigError(path + ".ramp_axis", "expected x or y");
  }

  const double res = world.resolution();
  const int cx0 = std::max(0, world.cell_x(shape.min_x()));
  const int cx1 = std::min(world.width() - 1, world.cell_x(shape.max_x()));
  const int cy0 = std::max(0, world.cell_y(shape.min_y()));
  const int cy1 = std::min(world.height() - 1, world.cell_y(shape.max_y()));

  for (int cy = cy0; cy <= cy1; ++cy) {
    for (int cx = cx0; cx <= cx1; ++cx) {
      const double x = (cx + 0.5) * res;
      const double y = (cy + 0.5) * res;
      if (!shape.contains(x, y)) continue;
      if (has_class) world.set_semantic(cx, cy, cls);
      if (set_elev) world.set_elevation(cx, cy, elev);
      if (has_ramp) {
        const double a = ramp_axis == "x"
                             ? (x - shape.min_x()) /
                                   std::max(1e-9, shape.max_x() - shape.min_x())
                             : (y - shape.min_y()) /
                                   std::max(1e-9, shape.max_y() - shape.min_y());
        world.set_elevation(cx, cy, ramp_from + a * (ramp_to - ramp_from));
      }
      if (has_bump) {
        const double dx = x - shape.center_x();
        const double dy = y - shape.center_y();
        const double g = bump_height *
                         std::exp(-(dx * dx + dy * dy) /
                                  (2.0 * bump_sigma * bump_sigma));
        world.set_elevation(cx, cy, world.elevation_at(cx, cy) + g);
      }
    }
  }
}

sim::SensorNoiseModel parse_noise(const json& j, const std::string& path) {
  sim::SensorNoiseModel noise;
  if (j.contains("semantic_flip_prob")) {
    const json& p = j.at("semantic_flip_prob");
    if (p.is_number()) {
      noise.set_uniform_flip_prob(p.get<double>());
    } else if (p.is_object()) {
      for (const auto& [key, value] : p.items()) {
        noise.semantic_flip_prob[static_cast<std::size_t>(
            class_from_string(key, path + ".semantic_flip_prob"))] =
            value.get<double>();
      }
    } else {
      throw ConfigError(path + ".semantic_flip_prob",
                        "expected a number or per-class table");
    }
  }
  noise.elevation_sigma = get_number(j, path, "elevation_sigma", 0.0);
  noise.detect_fn_prob = get_number(j, path, "detect_fn_prob", 0.0);
  noise.detect_fp_prob = get_number(j, path, "detect_fp_prob", 0.0);
  noise.max_detect_range = get_number(j, path, "max_detect_range", 8.0);
  noise.fov = deg_to_rad(get_number(j, path, "fov_deg", 87.0));
  noise.window_cells =
      static_cast<int>(get_int(j, path, "window_cells", 80));
  noise.window_resolution = get_number(j, path, "window_resolution", 0.10);
  for (double p : noise.semantic_flip_prob) {
    if (p < 0.0 || p > 1.0) {
      throw ConfigError(path + ".semantic_flip_prob", "must be in [0, 1]");
    }
  }
  if (noise.detect_fn_prob < 0.0 || noise.detect_fn_prob > 1.0 ||
      noise.detect_fp_prob < 0.0 || noise.detect_fp_prob > 1.0) {
    throw ConfigError(path, "detection probabilities must be in [0, 1]");
  }
  return noise;
}

Scenario parse_scenario(const json& j, const std::string& path) {
  Scenario scenario;
  scenario.name = require_string(j, path, "name");
  scenario.method = get_string(j, path, "method", "ours");
  scenario.instruction = require_string(j, path, "instruction");

  scenario.converter.mode = instruction::mode_from_string(
      get_string(j, path, "converter_mode", "offline"));
  if (j.contains("converter")) {
    const json& c = j.at("converter");
    const std::string cpath = path + ".converter";
    scenario.converter.base_url =
        get_string(c, cpath, "base_url", scenario.converter.base_url);
    scenario.converter.model =
        get_string(c, cpath, "model", scenario.converter.model);
    scenario.converter.timeout_ms = static_cast<int>(
        get_int(c, cpath, "timeout_ms", scenario.converter.timeout_ms));
    scenario.converter.api_key_env =
        get_string(c, cpath, "api_key_env", scenario.converter.api_key_env);
    scenario.converter.fixture_path =
        get_string(c, cpath, "fixture_path", "");
  }

  if (!j.contains("seeds") || !j.at("seeds").is_array() ||
      j.at("seeds").empty()) {
    throw ConfigError(path + ".seeds", "must be a non-empty array");
  }
  for (const auto& seed : j.at("seeds")) {
    if (!seed.is_number_integer()) {
      throw ConfigError(path + ".seeds", "seeds must be integers");
    }
    scenario.seeds.push_back(seed.get<std::uint64_t>());
  }

  if (!j.contains("world")) throw ConfigError(path + ".world", "missing");
  scenario.world = build_world(j.at("world"), path + ".world");

  nav::EpisodeConfig& ep = scenario.episode;
  if (!j.contains("start")) throw ConfigError(path + ".start", "missing");
  const json& start = j.at("start");
  ep.start.x = require_number(start, path + ".start", "x");
  ep.start.y = require_number(start, path + ".start", "y");
  ep.start.heading = get_number(start, path + ".start", "heading", 0.0);
  if (!scenario.world->in_bounds(ep.start.x, ep.start.y)) {
    throw ConfigError(path + ".start", "start pose outside world bounds");
  }

  ep.dt = get_number(j, path, "dt", 0.025);
  // 0 = derive from the route length (4x the straight-line tick estimate).
  ep.tick_budget = static_cast<int>(get_int(j, path, "tick_budget", 0));
  if (ep.tick_budget < 0) {
    throw ConfigError(path + ".tick_budget", "must be non-negative");
  }

  const std::string planner_kind =
      get_string(j, path, "planner_kind", "mppi");
  if (planner_kind == "mppi") {
    ep.planner_kind = nav::PlannerKind::kMppi;
  } else if (planner_kind == "primitives") {
    ep.planner_kind = nav::PlannerKind::kPrimitives;
  } else {
    throw ConfigError(path + ".planner_kind", "expected mppi or primitives");
  }
  const std::string costmap_kind =
      get_string(j, path, "costmap_kind", "semantic_elevation");
  if (costmap_kind == "semantic_elevation") {
    ep.costmap_kind = nav::CostmapKind::kSemanticElevation;
  } else if (costmap_kind == "height_only") {
    ep.costmap_kind = nav::CostmapKind::kHeightOnly;
  } else {
    throw ConfigError(path + ".costmap_kind",
                      "expected semantic_elevation or height_only");
  }

  if (j.contains("noise")) {
    ep.noise = parse_noise(j.at("noise"), path + ".noise");
  }

  if (j.contains("nav")) {
    const json& n = j.at("nav");
    const std::string npath = path + ".nav";
    ep.nav.reach_threshold =
        get_number(n, npath, "reach_threshold", ep.nav.reach_threshold);
    ep.nav.buffer_ticks = static_cast<int>(
        get_int(n, npath, "buffer_ticks", ep.nav.buffer_ticks));
    ep.nav.servo_gain = get_number(n, npath, "servo_gain", ep.nav.servo_gain);
    ep.nav.collision_cost_threshold =
        get_number(n, npath, "collision_cost_threshold",
                   ep.nav.collision_cost_threshold);
    if (ep.nav.reach_threshold <= 0.0 || ep.nav.buffer_ticks <= 0 ||
        ep.nav.servo_gain <= 0.0 || ep.nav.collision_cost_threshold <= 0.0) {
      throw ConfigError(npath, "nav parameters must be positive");
    }
  }

  if (j.contains("vehicle")) {
    const json& v = j.at("vehicle");
    const std::string vpath = path + ".vehicle";
    ep.vehicle.wheelbase =
        get_number(v, vpath, "wheelbase", ep.vehicle.wheelbase);
    ep.vehicle.steer_max =
        get_number(v, vpath, "steer_max", ep.vehicle.steer_max);
    ep.vehicle.v_max = get_number(v, vpath, "v_max", ep.vehicle.v_max);
  }

  if (j.contains("mppi")) {
    const json& m = j.at("mppi");
    const std::string mpath = path + ".mppi";
    ep.mppi.rollout_count = static_cast<int>(
        get_int(m, mpath, "rollout_count", ep.mppi.rollout_count));
    ep.mppi.horizon_steps = static_cast<int>(
        get_int(m, mpath, "horizon_steps", ep.mppi.horizon_steps));
    ep.mppi.dt = get_number(m, mpath, "dt", ep.mppi.dt);
    ep.mppi.lambda = get_number(m, mpath, "lambda", ep.mppi.lambda);
    ep.mppi.steer_sigma =
        get_number(m, mpath, "steer_sigma", ep.mppi.steer_sigma);
    ep.mppi.speed_sigma =
        get_number(m, mpath, "speed_sigma", ep.mppi.speed_sigma);
    ep.mppi.control_effort_weight = get_number(
        m, mpath, "control_effort_weight", ep.mppi.control_effort_weight);
    ep.mppi.nominal_speed =
        get_number(m, mpath, "nominal_speed", ep.mppi.nominal_speed);
    ep.mppi.threads =
        static_cast<int>(get_int(m, mpath, "threads", ep.mppi.threads));
    if (ep.mppi.rollout_count < 1 || ep.mppi.horizon_steps < 1 ||
        ep.mppi.lambda <= 0.0) {
      throw ConfigError(mpath, "K >= 1, T >= 1, lambda > 0 required");
    }
  }

  if (j.contains("primitives")) {
    const json& p = j.at("primitives");
    const std::string ppath = path + ".primitives";
    ep.primitives.arc_count = static_cast<int>(
        get_int(p, ppath, "arc_count", ep.primitives.arc_count));
    ep.primitives.speed = get_number(p, ppath, "speed", ep.primitives.speed);
    ep.primitives.horizon_steps = static_cast<int>(
        get_int(p, ppath, "horizon_steps", ep.primitives.horizon_steps));
    ep.primitives.dt = get_number(p, ppath, "dt", ep.primitives.dt);
    if (ep.primitives.arc_count < 1) {
      throw ConfigError(ppath + ".arc_count", "must be at least 1");
    }
  }

  if (j.contains("costmap")) {
    const json& c = j.at("costmap");
    const std::string cpath = path + ".costmap";
    ep.semantic_table.c_max =
        get_number(c, cpath, "c_max", ep.semantic_table.c_max);
    if (c.contains("semantic_costs")) {
      for (const auto& [key, value] : c.at("semantic_costs").items()) {
        ep.semantic_table.cost[static_cast<std::size_t>(class_from_string(
            key, cpath + ".semantic_costs"))] = value.get<double>();
      }
    }
    ep.elevation.slope_gain =
        get_number(c, cpath, "slope_gain", ep.elevation.slope_gain);
    ep.elevation.roughness_gain =
        get_number(c, cpath, "roughness_gain", ep.elevation.roughness_gain);
    ep.elevation.saturation =
        get_number(c, cpath, "saturation", ep.elevation.saturation);
    ep.penalty.sigma = get_number(c, cpath, "penalty_sigma", ep.penalty.sigma);
    ep.height_only.step_max =
        get_number(c, cpath, "height_step_max", ep.height_only.step_max);
    if (ep.penalty.sigma <= 0.0) {
      throw ConfigError(cpath + ".penalty_sigma", "must be positive");
    }
  }

  return scenario;
}

}  // namespace

std::shared_ptr<sim::WorldMap> build_world(const json& spec,
                                           const std::string& path) {
  const int width = static_cast<int>(get_int(spec, path, "width", 0));
  const int height = static_cast<int>(get_int(spec, path, "height", 0));
  const double resolution = get_number(spec, path, "resolution", 0.10);
  if (width <= 0 || height <= 0) {
    throw ConfigError(path, "width and height (cells) must be positive");
  }
  const sim::SemanticClass fill =
      class_from_string(get_string(spec, path, "fill", "smooth"), path);
  auto world = std::make_shared<sim::WorldMap>(width, height, resolution, fill);

  if (spec.contains("patches")) {
    const json& patches = spec.at("patches");
    if (!patches.is_array()) {
      throw ConfigError(path + ".patches", "expected an array");
    }
    for (std::size_t i = 0; i < patches.size(); ++i) {
      apply_patch(*world, patches[i],
                  path + ".patches[" + std::to_string(i) + "]");
    }
  }

  if (spec.contains("landmarks")) {
    for (std::size_t i = 0; i < spec.at("landmarks").size(); ++i) {
      const json& lm = spec.at("landmarks")[i];
      const std::string lpath = path + ".landmarks[" + std::to_string(i) + "]";
      sim::Landmark landmark;
      landmark.name =
          route::normalize_landmark(require_string(lm, lpath, "name"));
      landmark.x = require_number(lm, lpath, "x");
      landmark.y = require_number(lm, lpath, "y");
      landmark.radius = get_number(lm, lpath, "radius", 0.5);
      try {
        world->add_landmark(std::move(landmark));
      } catch (const OutOfBoundsError& e) {
        throw ConfigError(lpath, e.what());
      }
    }
  }
  return world;
}

Suite load_suite(const json& config) {
  Suite suite;
  suite.name = get_string(config, "suite", "suite", "suite");
  if (!config.contains("scenarios") || !config.at("scenarios").is_array() ||
      config.at("scenarios").empty()) {
    throw ConfigError("scenarios", "must be a non-empty array");
  }
  const json defaults = config.contains("defaults")
                            ? config.at("defaults")
                            : json::object();
  std::set<std::string> names;
  for (std::size_t i = 0; i < config.at("scenarios").size(); ++i) {
    const std::string path = "scenarios[" + std::to_string(i) + "]";
    const json merged = merge_defaults(defaults, config.at("scenarios")[i]);
    Scenario scenario = parse_scenario(merged, path);
    if (!names.insert(scenario.name).second) {
      throw ConfigError(path + ".name",
                        "duplicate scenario name: " + scenario.name);
    }
    suite.scenarios.push_back(std::move(scenario));
  }
  return suite;
}

Suite load_suite_file(const std::string& path) {
  return load_suite(load_config_file(path));
}

}  // namespace langnav::harness
