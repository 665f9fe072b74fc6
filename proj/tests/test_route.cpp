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

#include <string>
#include <vector>

#include "doctest.h"
#include "langnav/core/errors.hpp"
#include "langnav/core/rng.hpp"
#include "langnav/route/route.hpp"

using namespace langnav;
using route::Maneuver;
using route::Orientation;

namespace {

const char* kScenario1 =
    "You may go straight to a trashcan, then turn left. After that, go "
    "straight to a chair, then turn left again. Then you can go straight, "
    "there is a box. Upon arrival, you may stop.";
const char* kScenario2 =
    "Go straight to an orange cone, then turn right. After that, go "
    "straight to a package.";
const char* kScenario3 = "Find a white ball, and stop.";

std::vector<std::string> landmark_names(
    const route::CognitiveRouteDescription& crd) {
  std::vector<std::string> out;
  for (const route::RouteStep& step : crd.steps) out.push_back(step.landmark);
  return out;
}

// Seeded random descriptions for the property tests.
route::CognitiveRouteDescription random_crd(std::uint64_t seed) {
  static const char* kPool[] = {"trashcan", "chair",     "box",
                                "orange cone", "package", "white ball",
                                "bench",    "tree",      "red door"};
  route::CognitiveRouteDescription crd;
  const std::size_t n = 1 + rng::below(5, seed, 0);
  for (std::size_t i = 0; i < n; ++i) {
    route::RouteStep step;
    step.landmark = kPool[rng::below(std::size(kPool), seed, 1, i)];
    step.orientation = (i + 1 == n) ? Orientation::kStop
                       : (rng::below(2, seed, 2, i) == 0)
                           ? Orientation::kLeft
                           : Orientation::kRight;
    crd.steps.push_back(step);
  }
  return crd;
}

}  // namespace

TEST_CASE("parse_crd decomposes the two-turn delivery instruction") {
  const auto crd = route::parse_crd(kScenario1);
  CHECK(landmark_names(crd) ==
        std::vector<std::string>{"trashcan", "chair", "box"});
  const auto lists = route::extract_lists(crd);
  CHECK(lists.orientations ==
        std::vector<Orientation>{Orientation::kLeft, Orientation::kLeft,
                                 Orientation::kStop});
  CHECK(lists.progress.size() == 3);
  CHECK_FALSE(crd.implicit_stop);

  const auto maneuvers =
      route::merge_maneuvers(lists.progress, lists.orientations);
  CHECK(maneuvers == std::vector<Maneuver>{
                         Maneuver::kStraight, Maneuver::kLeft,
                         Maneuver::kStraight, Maneuver::kLeft,
                         Maneuver::kStraight, Maneuver::kStop});
}

TEST_CASE("parse_crd appends the implicit terminal stop") {
  const auto crd = route::parse_crd(kScenario2);
  CHECK(landmark_names(crd) ==
        std::vector<std::string>{"orange cone", "package"});
  CHECK(crd.implicit_stop);
  const auto seq = route::to_maneuver_sequence(crd);
  CHECK(seq.maneuvers ==
        std::vector<Maneuver>{Maneuver::kStraight, Maneuver::kRight,
                              Maneuver::kStraight, Maneuver::kStop});
}

TEST_CASE("parse_crd handles the single-landmark form") {
  const auto crd = route::parse_crd(kScenario3);
  CHECK(landmark_names(crd) == std::vector<std::string>{"white ball"});
  const auto seq = route::to_maneuver_sequence(crd);
  CHECK(seq.maneuvers ==
        std::vector<Maneuver>{Maneuver::kStraight, Maneuver::kStop});
  CHECK(seq.landmarks == std::vector<std::string>{"white ball"});
}

TEST_CASE("extract_lists returns three aligned lists") {
  const auto crd = route::parse_crd(kScenario3);
  const auto lists = route::extract_lists(crd);
  CHECK(lists.progress == std::vector<route::Progress>{
                              route::Progress::kStraight});
  CHECK(lists.landmarks == std::vector<std::string>{"white ball"});
  CHECK(lists.orientations == std::vector<Orientation>{Orientation::kStop});

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto random = random_crd(seed);
    const auto l = route::extract_lists(random);
    CHECK(l.progress.size() == random.size());
    CHECK(l.landmarks.size() == random.size());
    CHECK(l.orientations.size() == random.size());
  }
}

TEST_CASE("merge_maneuvers interleaves progress and orientations") {
  using P = route::Progress;
  CHECK(route::merge_maneuvers({P::kStraight}, {Orientation::kStop}) ==
        std::vector<Maneuver>{Maneuver::kStraight, Maneuver::kStop});
  CHECK(route::merge_maneuvers({P::kStraight}, {Orientation::kRight}) ==
        std::vector<Maneuver>{Maneuver::kStraight, Maneuver::kRight});
  CHECK_THROWS_AS(route::merge_maneuvers({P::kStraight, P::kStraight},
                                         {Orientation::kStop}),
                  LengthMismatchError);
}

TEST_CASE("parse_crd rejects malformed routes with the sentence index") {
  // No landmark anywhere.
  CHECK_THROWS_AS(route::parse_crd("Turn left, then stop."),
                  MalformedRouteError);
  CHECK_THROWS_AS(route::parse_crd(""), MalformedRouteError);

  // Terminal orientation is a turn, not a stop.
  CHECK_THROWS_AS(route::parse_crd("Go straight to a box, then turn left."),
                  MalformedRouteError);

  // Premature stop: reported against the first offending sentence.
  try {
    route::parse_crd(
        "Go straight to a box, then stop. Go straight to a chair, then "
        "stop.");
    FAIL("expected MalformedRouteError");
  } catch (const MalformedRouteError& e) {
    CHECK(e.sentence_index() == 0);
  }

  // Missing orientation mid-route.
  try {
    route::parse_crd(
        "Go straight to a trashcan. Go straight to a chair, then stop.");
    FAIL("expected MalformedRouteError");
  } catch (const MalformedRouteError& e) {
    CHECK(e.sentence_index() == 0);
  }
}

TEST_CASE("parse_crd is deterministic") {
  const auto a = route::parse_crd(kScenario1);
  const auto b = route::parse_crd(kScenario1);
  CHECK(a == b);
}

TEST_CASE("canonical rendering round-trips") {
  const auto crd = route::parse_crd(kScenario1);
  const std::string text = route::render_canonical(crd);
  CHECK(text ==
        "Go straight to a trashcan, then turn left. Go straight to a chair, "
        "then turn left. Go straight to a box, then stop.");
  CHECK(route::parse_crd(text) == crd);

  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto random = random_crd(seed);
    const auto reparsed = route::parse_crd(route::render_canonical(random));
    CHECK(reparsed == random);
    CHECK_FALSE(reparsed.implicit_stop);
  }
}

TEST_CASE("json serialization uses the documented shape") {
  const auto crd = route::parse_crd(kScenario3);
  const nlohmann::json j = route::to_json(crd);
  CHECK(j.dump() ==
        R"({"steps":[{"landmark":"white ball","orientation":"stop","progress":"straight"}]})");
  CHECK(route::crd_from_json(j) == crd);

  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const auto random = random_crd(seed);
    CHECK(route::crd_from_json(route::to_json(random)) == random);
  }
}

TEST_CASE("normalize_landmark canonicalizes names") {
  CHECK(route::normalize_landmark("  Orange   Cone ") == "orange cone");
  CHECK(route::normalize_landmark("Box") == "box");
  CHECK(route::normalize_landmark("white\tball") == "white ball");
}

TEST_CASE("score_route matches the hand-derived values") {
  // Complete candidate, N = 3.
  route::PartialRoute complete;
  for (int i = 0; i < 3; ++i) {
    route::PartialStep step;
    step.progress = route::Progress::kStraight;
    step.landmark = "lm" + std::to_string(i);
    step.orientation = i == 2 ? Orientation::kStop : Orientation::kLeft;
    complete.steps.push_back(step);
  }
  auto score = route::score_route(complete, 3);
  CHECK(score.avg_score == doctest::Approx(1.0));
  CHECK(score.avg_progress == doctest::Approx(1.0));

  // Drop the orientation of step 2 of 3: 8 of 9 components, defect at the
  // second landmark.
  route::PartialRoute damaged = complete;
  damaged.steps[1].orientation.reset();
  score = route::score_route(damaged, 3);
  CHECK(score.avg_score == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(score.avg_progress == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("score_route caps hallucinated components at 3N") {
  route::PartialRoute oversized;
  for (int i = 0; i < 5; ++i) {
    route::PartialStep step;
    step.progress = route::Progress::kStraight;
    step.landmark = "x";
    step.orientation = Orientation::kLeft;
    oversized.steps.push_back(step);
  }
  const auto score = route::score_route(oversized, 2);
  CHECK(score.avg_score == doctest::Approx(1.0));
}

TEST_CASE("score_route never increases when a component is removed") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const auto crd = random_crd(seed);
    route::PartialRoute candidate;
    for (const route::RouteStep& step : crd.steps) {
      route::PartialStep p;
      p.progress = step.progress;
      p.landmark = step.landmark;
      p.orientation = step.orientation;
      candidate.steps.push_back(p);
    }
    const double base = route::score_route(candidate, crd.size()).avg_score;
    for (std::size_t i = 0; i < candidate.steps.size(); ++i) {
      for (int component = 0; component < 3; ++component) {
        route::PartialRoute removed = candidate;
        if (component == 0) removed.steps[i].progress.reset();
        if (component == 1) removed.steps[i].landmark.reset();
        if (component == 2) removed.steps[i].orientation.reset();
        const auto score = route::score_route(removed, crd.size());
        CHECK(score.avg_score <= base + 1e-12);
        CHECK(score.avg_progress <= 1.0);
      }
    }
  }
}

TEST_CASE("avg_progress is 1 exactly when nothing is missing") {
  route::PartialRoute candidate;
  route::PartialStep step;
  step.progress = route::Progress::kStraight;
  step.landmark = "box";
  step.orientation = Orientation::kStop;
  candidate.steps.push_back(step);
  CHECK(route::score_route(candidate, 1).avg_progress == doctest::Approx(1.0));
  candidate.steps[0].progress.reset();
  CHECK(route::score_route(candidate, 1).avg_progress == doctest::Approx(0.0));
}
