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

#ifndef LANGNAV_HARNESS_SUITE_H_
#define LANGNAV_HARNESS_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "langnav/harness/scenario.hpp"
#include "langnav/nav/navigator.hpp"

namespace langnav::harness {

struct RunRecord {
  std::string scenario;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t n_landmarks = 0;
  nav::EpisodeResult result;

  double progress() const {
    return n_landmarks == 0
               ? 0.0
               : static_cast<double>(result.landmarks_reached) /
                     static_cast<double>(n_landmarks);
  }
};

struct MethodAggregate {
  int runs = 0;
  double success_rate = 0.0;
  double avg_progress = 0.0;
};

struct SuiteReport {
  std::string suite_name;
  std::vector<RunRecord> runs;  // scenario order x seed order

  MethodAggregate aggregate() const;
  MethodAggregate aggregate_for(const std::string& method) const;
  std::vector<std::string> methods() const;
};

struct RunOptions {
  std::string out_dir;  // empty: no files written
  bool svg = false;
  int parallel = 1;
};

// Converts each scenario's instruction, sweeps every (scenario, seed) pair,
// and optionally writes per-run trajectory CSVs, per-run SVGs, and the
// report JSON under out_dir. Conversion or episode failures become failed
// run records; the suite itself keeps going.
SuiteReport run_suite(const Suite& suite, const RunOptions& options);

nlohmann::json report_to_json(const SuiteReport& report);

// Exact column order:
// tick,x,y,heading,speed,steering,active_maneuver,phase,target_landmark,
// min_path_cost,ess
std::string trajectory_csv(const std::vector<nav::TrajectoryRow>& rows);

std::string run_file_stem(const RunRecord& record);

}  // namespace langnav::harness

#endif  // LANGNAV_HARNESS_SUITE_H_
