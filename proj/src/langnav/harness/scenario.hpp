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

#ifndef LANGNAV_HARNESS_SCENARIO_H_
#define LANGNAV_HARNESS_SCENARIO_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "langnav/instruction/client.hpp"
#include "langnav/nav/navigator.hpp"
#include "langnav/sim/world.hpp"

namespace langnav::harness {

// One experiment: a world, an instruction, module settings, and the seeds
// to sweep. `episode.plan` stays empty until the instruction is converted.
struct Scenario {
  std::string name;
  std::string method = "ours";  // aggregation label for ablations
  std::string instruction;
  instruction::ClientConfig converter;
  std::vector<std::uint64_t> seeds;
  std::shared_ptr<const sim::WorldMap> world;
  nav::EpisodeConfig episode;
};

struct Suite {
  std::string name;
  std::vector<Scenario> scenarios;
};

// Builds a world from the scenario's layered primitives (painted in order).
std::shared_ptr<sim::WorldMap> build_world(const nlohmann::json& spec,
                                           const std::string& path);

// Validates and assembles a suite; throws ConfigError naming the field.
Suite load_suite(const nlohmann::json& config);
Suite load_suite_file(const std::string& path);

}  // namespace langnav::harness

#endif  // LANGNAV_HARNESS_SCENARIO_H_
