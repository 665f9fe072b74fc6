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

#include "langnav/costmap/costmap.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "langnav/core/errors.hpp"

namespace langnav::costmap {
namespace {

void require_same_shape(const CostMap& a, const CostMap& b) {
  if (!a.same_shape(b)) {
    throw DimensionMismatchError("cost maps differ in shape or resolution");
  }
}

void require_window(const sim::Observation& obs) {
  if (obs.cells <= 0 ||
      obs.semantics.size() !=
          static_cast<std::size_t>(obs.cells) * obs.cells ||
      obs.elevation.size() != obs.semantics.size()) {
    throw DimensionMismatchError("observation window is malformed");
  }
}

}  // namespace

CostMap::CostMap(int width, int height, double resolution, double c_max)
    : width_(width),
      height_(height),
      resolution_(resolution),
      c_max_(c_max),
      cost_(static_cast<std::size_t>(width) * height, 0.0) {
  if (width <= 0 || height <= 0 || resolution <= 0.0 || c_max <= 0.0) {
    throw Error("cost map dimensions, resolution, and c_max must be positive");
  }
}

void CostMap::set(int x, int y, double value) {
  cost_[static_cast<std::size_t>(y) * width_ + x] =
      std::clamp(value, 0.0, c_max_);
}

void CostMap::add_clamped(int x, int y, double delta) {
  const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
  cost_[i] = std::clamp(cost_[i] + delta, 0.0, c_max_);
}

CostMap build_semantic_cost(const sim::Observation& obs,
                            const SemanticCostTable& table) {
  require_window(obs);
  CostMap map(obs.cells, obs.cells, obs.resolution, table.c_max);
  for (int y = 0; y < obs.cells; ++y) {
    for (int x = 0; x < obs.cells; ++x) {
      map.set(x, y, table[obs.semantic_at(x, y)]);
    }
  }
  return map;
}

CostMap build_elevation_cost(const sim::Observation& obs,
                             const ElevationCostParams& params, double c_max) {
  require_window(obs);
  const int n = obs.cells;
  const double res = obs.resolution;
  CostMap map(n, n, res, c_max);

  auto h = [&](int x, int y) { return obs.elevation_at(x, y); };

  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double gx;
      if (x == 0) {
        gx = (h(1, y) - h(0, y)) / res;
      } else if (x == n - 1) {
        gx = (h(n - 1, y) - h(n - 2, y)) / res;
      } else {
        gx = (h(x + 1, y) - h(x - 1, y)) / (2.0 * res);
      }
      double gy;
      if (y == 0) {
        gy = (h(x, 1) - h(x, 0)) / res;
      } else if (y == n - 1) {
        gy = (h(x, n - 1) - h(x, n - 2)) / res;
      } else {
        gy = (h(x, y + 1) - h(x, y - 1)) / (2.0 * res);
      }
      const double slope = std::hypot(gx, gy);

      // Roughness: residual variance around the least-squares plane over the
      // in-window part of the 3x3 block, so a uniform slope carries no
      // roughness cost.
      double suu = 0, svv = 0, suv = 0, su = 0, sv = 0;
      double shu = 0, shv = 0, sh = 0, shh = 0;
      int count = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= n || ny >= n) continue;
          const double v = h(nx, ny);
          suu += dx * dx;
          svv += dy * dy;
          suv += dx * dy;
          su += dx;
          sv += dy;
          shu += v * dx;
          shv += v * dy;
          sh += v;
          shh += v * v;
          ++count;
        }
      }
      // Cramer solve of [suu suv su; suv svv sv; su sv n] [a b c] = rhs.
      const double det = suu * (svv * count - sv * sv) -
                         suv * (suv * count - sv * su) +
                         su * (suv * sv - svv * su);
      double var = 0.0;
      if (std::abs(det) > 1e-12) {
        const double a = (shu * (svv * count - sv * sv) -
                          suv * (shv * count - sv * sh) +
                          su * (shv * sv - svv * sh)) /
                         det;
        const double b = (suu * (shv * count - sh * sv) -
                          shu * (suv * count - sv * su) +
                          su * (suv * sh - shv * su)) /
                         det;
        const double c = (suu * (svv * sh - shv * sv) -
                          suv * (suv * sh - shv * su) +
                          shu * (suv * sv - svv * su)) /
                         det;
        // Residual sum of squares via the fitted values.
        const double rss =
            shh - 2.0 * (a * shu + b * shv + c * sh) +
            (a * a * suu + b * b * svv + c * c * count +
             2.0 * (a * b * suv + a * c * su + b * c * sv));
        var = std::max(0.0, rss / count);
      }

      map.set(x, y, std::min(params.saturation,
                             params.slope_gain * slope +
                                 params.roughness_gain * var));
    }
  }
  return map;
}

CostMap aggregate(const CostMap& c_s, const CostMap& c_e) {
  require_same_shape(c_s, c_e);
  CostMap out(c_s.width(), c_s.height(), c_s.resolution(), c_s.c_max());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.set(x, y, std::min(c_s.c_max(), c_s.at(x, y) + c_e.at(x, y)));
    }
  }
  return out;
}

CostMap apply_maneuver_penalty(const CostMap& c_se, route::Maneuver m,
                               const ManeuverPenaltyParams& params) {
  if (m == route::Maneuver::kStraight || m == route::Maneuver::kStop) {
    return c_se;
  }
  if (params.sigma <= 0.0) throw Error("penalty sigma must be positive");

  const double mu =
      (m == route::Maneuver::kLeft) ? c_se.width() - 1.0 : 0.0;
  CostMap out = c_se;
  std::vector<double> column_penalty(c_se.width());
  for (int x = 0; x < c_se.width(); ++x) {
    const double d = x - mu;
    column_penalty[x] =
        c_se.c_max() * std::exp(-(d * d) / (2.0 * params.sigma * params.sigma));
  }
  for (int y = 0; y < c_se.height(); ++y) {
    for (int x = 0; x < c_se.width(); ++x) {
      out.add_clamped(x, y, column_penalty[x]);
    }
  }
  return out;
}

CostMap build_height_only_cost(const sim::Observation& obs,
                               const HeightOnlyParams& params, double c_max) {
  require_window(obs);
  const int n = obs.cells;
  CostMap map(n, n, obs.resolution, c_max);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double max_step = 0.0;
      const double h0 = obs.elevation_at(x, y);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= n || ny >= n) {
            continue;
          }
          max_step = std::max(max_step, std::abs(obs.elevation_at(nx, ny) - h0));
        }
      }
      map.set(x, y, max_step > params.step_max ? c_max : 0.0);
    }
  }
  return map;
}

void world_to_local(const CostMap& map, const LocalFrame& frame, double wx,
                    double wy, double* lx, double* ly) {
  const double dx = wx - frame.x;
  const double dy = wy - frame.y;
  const double fwd_x = std::cos(frame.heading);
  const double fwd_y = std::sin(frame.heading);
  // Right-hand lateral axis: +x toward the vehicle's right.
  const double u = dx * fwd_y - dy * fwd_x;
  const double f = dx * fwd_x + dy * fwd_y;
  const double res = map.resolution();
  *lx = u + (map.width() / 2 + 0.5) * res;
  *ly = f + (map.height() / 2 + 0.5) * res;
}

bool world_to_cell(const CostMap& map, const LocalFrame& frame, double wx,
                   double wy, int* cx, int* cy) {
  double lx, ly;
  world_to_local(map, frame, wx, wy, &lx, &ly);
  const int ix = static_cast<int>(std::floor(lx / map.resolution()));
  const int iy = static_cast<int>(std::floor(ly / map.resolution()));
  if (ix < 0 || iy < 0 || ix >= map.width() || iy >= map.height()) {
    return false;
  }
  *cx = ix;
  *cy = iy;
  return true;
}

double cost_at_world(const CostMap& map, const LocalFrame& frame, double wx,
                     double wy) {
  int cx, cy;
  if (!world_to_cell(map, frame, wx, wy, &cx, &cy)) return map.c_max();
  return map.at(cx, cy);
}

void write_text(const CostMap& map, std::ostream& out) {
  out << "costmap 1\n";
  out << "width " << map.width() << "\n";
  out << "height " << map.height() << "\n";
  out << "resolution " << map.resolution() << "\n";
  out << "c_max " << map.c_max() << "\n";
  out.precision(17);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (x > 0) out << ' ';
      out << map.at(x, y);
    }
    out << '\n';
  }
}

std::string to_text(const CostMap& map) {
  std::ostringstream out;
  write_text(map, out);
  return out.str();
}

CostMap read_text(std::istream& in) {
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "costmap" || version != 1) {
    throw Error("not a costmap text file");
  }
  std::string key;
  int width = 0, height = 0;
  double resolution = 0.0, c_max = 0.0;
  in >> key >> width >> key >> height >> key >> resolution >> key >> c_max;
  CostMap map(width, height, resolution, c_max);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v;
      if (!(in >> v)) throw Error("costmap text truncated");
      map.set(x, y, v);
    }
  }
  return map;
}

}  // namespace langnav::costmap
