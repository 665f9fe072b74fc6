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

#ifndef LANGNAV_CORE_RNG_H_
#define LANGNAV_CORE_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace langnav {

// Counter-based randomness. Every draw is a pure function of a key tuple
// (seed, stream, counters...), so results do not depend on call order or on
// how work is split across threads. Consumers agree on a stream id per use
// site and key the remaining words with their own loop indices.
namespace rng {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash(std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0, std::uint64_t d = 0,
                          std::uint64_t e = 0) {
  std::uint64_t h = mix(a + kGamma);
  h = mix(h ^ (b + kGamma));
  h = mix(h ^ (c + kGamma));
  h = mix(h ^ (d + kGamma));
  h = mix(h ^ (e + kGamma));
  return h;
}

// Uniform in [0, 1).
inline double uniform(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                      std::uint64_t d = 0, std::uint64_t e = 0) {
  return static_cast<double>(hash(a, b, c, d, e) >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; safe as a log() argument.
inline double uniform_open(std::uint64_t a, std::uint64_t b = 0,
                           std::uint64_t c = 0, std::uint64_t d = 0,
                           std::uint64_t e = 0) {
  return static_cast<double>((hash(a, b, c, d, e) >> 11) + 1) * 0x1.0p-53;
}

// Integer in [0, n).
inline std::uint64_t below(std::uint64_t n, std::uint64_t a,
                           std::uint64_t b = 0, std::uint64_t c = 0,
                           std::uint64_t d = 0, std::uint64_t e = 0) {
  return hash(a, b, c, d, e) % n;
}

struct NormalPair {
  double z0;
  double z1;
};

// Box-Muller over two keyed uniforms. The two sub-draws use fixed trailing
// counter words 0 and 1 so a key yields the same pair everywhere.
inline NormalPair normal_pair(std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0, std::uint64_t d = 0) {
  const double u1 = uniform_open(a, b, c, d, 0);
  const double u2 = uniform(a, b, c, d, 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

inline double normal(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                     std::uint64_t d = 0) {
  return normal_pair(a, b, c, d).z0;
}

}  // namespace rng
}  // namespace langnav

#endif  // LANGNAV_CORE_RNG_H_
