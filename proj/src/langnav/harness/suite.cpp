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

#include "langnav/harness/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "langnav/harness/svg.hpp"
#include "langnav/route/route.hpp"

namespace langnav::harness {
namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// 4x the straight-line travel estimate through the plan's landmarks.
int default_tick_budget(const sim::WorldMap& world,
                        const nav::EpisodeConfig& config) {
  double length = 0.0;
  double x = config.start.x, y = config.start.y;
  for (const std::string& name : config.plan.landmarks) {
    const sim::Landmark* lm = world.find_landmark(name);
    if (lm == nullptr) return 4000;
    length += std::hypot(lm->x - x, lm->y - y);
    x = lm->x;
    y = lm->y;
  }
  const double speed = std::max(0.1, config.mppi.nominal_speed);
  const double ticks = 4.0 * length / (speed * config.dt);
  return std::max(200, static_cast<int>(ticks));
}

}  // namespace

MethodAggregate SuiteReport::aggregate() const {
  MethodAggregate agg;
  for (const RunRecord& run : runs) {
    ++agg.runs;
    agg.success_rate += run.result.success ? 1.0 : 0.0;
    agg.avg_progress += run.progress();
  }
  if (agg.runs > 0) {
    agg.success_rate /= agg.runs;
    agg.avg_progress /= agg.runs;
  }
  return agg;
}

MethodAggregate SuiteReport::aggregate_for(const std::string& method) const {
  MethodAggregate agg;
  for (const RunRecord& run : runs) {
    if (run.method != method) continue;
    ++agg.runs;
    agg.success_rate += run.result.success ? 1.0 : 0.0;
    agg.avg_progress += run.progress();
  }
  if (agg.runs > 0) {
    agg.success_rate /= agg.runs;
    agg.avg_progress /= agg.runs;
  }
  return agg;
}

std::vector<std::string> SuiteReport::methods() const {
  std::vector<std::string> out;
  for (const RunRecord& run : runs) {
    if (std::find(out.begin(), out.end(), run.method) == out.end()) {
      out.push_back(run.method);
    }
  }
  return out;
}

std::string trajectory_csv(const std::vector<nav::TrajectoryRow>& rows) {
  std::string out =
      "tick,x,y,heading,speed,steering,active_maneuver,phase,"
      "target_landmark,min_path_cost,ess\n";
  for (const nav::TrajectoryRow& row : rows) {
    out += std::to_string(row.tick);
    out += ',';
    out += fmt_double(row.x);
    out += ',';
    out += fmt_double(row.y);
    out += ',';
    out += fmt_double(row.heading);
    out += ',';
    out += fmt_double(row.speed);
    out += ',';
    out += fmt_double(row.steering);
    out += ',';
    out += route::to_string(row.active_maneuver);
    out += ',';
    out += nav::to_string(row.phase);
    out += ',';
    out += row.target_landmark;
    out += ',';
    out += fmt_double(row.min_path_cost);
    out += ',';
    out += fmt_double(row.ess);
    out += '\n';
  }
  return out;
}

std::string run_file_stem(const RunRecord& record) {
  return record.scenario + "_seed" + std::to_string(record.seed);
}

SuiteReport run_suite(const Suite& suite, const RunOptions& options) {
  SuiteReport report;
  report.suite_name = suite.name;

  // Convert each instruction once; a failure marks all of that scenario's
  // runs failed without aborting the suite.
  struct Prepared {
    const Scenario* scenario;
    route::ManeuverSequence plan;
    std::string conversion_error;
  };
  std::vector<Prepared> prepared;
  for (const Scenario& scenario : suite.scenarios) {
    Prepared p{&scenario, {}, ""};
    try {
      instruction::InstructionClient client(scenario.converter);
      const instruction::ConversionResult conversion =
          client.convert(scenario.instruction);
      p.plan = route::to_maneuver_sequence(conversion.crd);
    } catch (const std::exception& e) {
      p.conversion_error = e.what();
    }
    prepared.push_back(std::move(p));
  }

  struct Job {
    const Prepared* prepared;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const Prepared& p : prepared) {
    for (std::uint64_t seed : p.scenario->seeds) {
      jobs.push_back(Job{&p, seed});
    }
  }

  std::vector<RunRecord> records(jobs.size());
  auto execute = [&](std::size_t i) {
    const Job& job = jobs[i];
    const Scenario& scenario = *job.prepared->scenario;
    RunRecord record;
    record.scenario = scenario.name;
    record.method = scenario.method;
    record.seed = job.seed;
    record.n_landmarks = job.prepared->plan.landmarks.size();
    if (!job.prepared->conversion_error.empty()) {
      record.result.failure_reason =
          "conversion failed: " + job.prepared->conversion_error;
    } else {
      nav::EpisodeConfig config = scenario.episode;
      config.plan = job.prepared->plan;
      config.seed = job.seed;
      if (config.tick_budget == 0) {
        config.tick_budget = default_tick_budget(*scenario.world, config);
      }
      record.result = nav::run_episode(*scenario.world, config);
    }
    records[i] = std::move(record);
  };

  const int workers = std::max(1, options.parallel);
  if (workers == 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) execute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<std::size_t>(workers, jobs.size());
    pool.reserve(n);
    for (int w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) break;
          execute(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  report.runs = std::move(records);

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    for (std::size_t i = 0; i < report.runs.size(); ++i) {
      const RunRecord& record = report.runs[i];
      const std::string stem =
          (std::filesystem::path(options.out_dir) / run_file_stem(record))
              .string();
      std::ofstream csv(stem + ".csv", std::ios::binary);
      csv << trajectory_csv(record.result.trajectory);
      if (options.svg) {
        const Scenario& scenario = *jobs[i].prepared->scenario;
        std::ofstream svg(stem + ".svg", std::ios::binary);
        svg << render_svg(*scenario.world, record.result.trajectory, {},
                          run_file_stem(record));
      }
    }
    std::ofstream out(
        (std::filesystem::path(options.out_dir) / "report.json").string(),
        std::ios::binary);
    out << report_to_json(report).dump(2) << '\n';
  }
  return report;
}

nlohmann::json report_to_json(const SuiteReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const RunRecord& record : report.runs) {
    runs.push_back({{"scenario", record.scenario},
                    {"method", record.method},
                    {"seed", record.seed},
                    {"success", record.result.success},
                    {"landmarks_reached", record.result.landmarks_reached},
                    {"n_landmarks", record.n_landmarks},
                    {"progress", record.progress()},
                    {"ticks", record.result.ticks},
                    {"failure_reason", record.result.failure_reason}});
  }
  const MethodAggregate total = report.aggregate();
  nlohmann::json methods = nlohmann::json::object();
  for (const std::string& method : report.methods()) {
    const MethodAggregate agg = report.aggregate_for(method);
    methods[method] = {{"runs", agg.runs},
                       {"success_rate", agg.success_rate},
                       {"avg_progress", agg.avg_progress}};
  }
  return nlohmann::json{{"suite", report.suite_name},
                        {"runs", std::move(runs)},
                        {"aggregate",
                         {{"runs", total.runs},
                          {"success_rate", total.success_rate},
                          {"avg_progress", total.avg_progress}}},
                        {"methods", std::move(methods)}};
}

}  // namespace langnav::harness
