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

#ifndef LANGNAV_CORE_GEOMETRY_H_
#define LANGNAV_CORE_GEOMETRY_H_

#include <cmath>
#include <numbers>

namespace langnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Normalize an angle to (-pi, pi].
inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline double distance(double ax, double ay, double bx, double by) {
  return std::hypot(bx - ax, by - ay);
}

}  // namespace langnav

#endif  // LANGNAV_CORE_GEOMETRY_H_
