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

#ifndef LANGNAV_ROUTE_ROUTE_H_
#define LANGNAV_ROUTE_ROUTE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace langnav::route {

enum class Orientation { kLeft, kRight, kStop };
enum class Progress { kStraight };
enum class Maneuver { kStraight, kLeft, kRight, kStop };

std::string to_string(Orientation o);
std::string to_string(Maneuver m);
std::string to_string(Progress p);

// One iteration of the route schema: advance, name the landmark that ends the
// advance, reorient at the landmark.
struct RouteStep {
  Progress progress = Progress::kStraight;
  std::string landmark;  // non-empty, lowercase-normalized
  Orientation orientation = Orientation::kStop;

  bool operator==(const RouteStep&) const = default;
};

// A route description whose steps follow the schema end to end: every step
// has a landmark and an orientation, and exactly the last orientation is
// Stop. `implicit_stop` records that the terminal Stop was appended because
// the source text ended at a landmark.
struct CognitiveRouteDescription {
  std::vector<RouteStep> steps;
  bool implicit_stop = false;

  std::size_t size() const { return steps.size(); }
  bool operator==(const CognitiveRouteDescription& other) const {
    return steps == other.steps;
  }
};

struct ManeuverSequence {
  std::vector<Maneuver> maneuvers;   // length 2N: p1, o1, p2, o2, ...
  std::vector<std::string> landmarks;  // length N

  bool operator==(const ManeuverSequence&) const = default;
};

struct RouteScore {
  double avg_score = 0.0;
  double avg_progress = 0.0;
};

// Lenient scan output: what the keyword pass actually found, holes included.
// Candidates for scoring live here; parse_crd() is the validated path.
struct PartialStep {
  std::optional<Progress> progress;
  std::optional<std::string> landmark;
  std::optional<Orientation> orientation;
  std::size_t sentence_index = 0;

  bool complete() const {
    return progress.has_value() && landmark.has_value() &&
           orientation.has_value();
  }
};

struct PartialRoute {
  std::vector<PartialStep> steps;
};

struct ExtractedLists {
  std::vector<Progress> progress;
  std::vector<std::string> landmarks;
  std::vector<Orientation> orientations;
};

// Lowercase, trim, collapse internal whitespace. Landmark names are matched
// by string equality against detections, so both sides go through this.
std::string normalize_landmark(std::string_view text);

// Keyword scan without validation. Recognized cues: "go straight" (progress),
// "turn left" / "turn right" / "stop" (orientation), and a landmark noun
// phrase after "to a/an/the", "there is a/an/the", or "find a/an/the".
PartialRoute scan_route(std::string_view text);

// Strict parse: scan, default missing progress to Straight, append the
// terminal Stop when the text ends at a landmark, and enforce the route
// invariants. Throws MalformedRouteError with the offending sentence index.
CognitiveRouteDescription parse_crd(std::string_view text);

ExtractedLists extract_lists(const CognitiveRouteDescription& crd);

// Interleave [p1, o1, p2, o2, ...]; throws LengthMismatchError.
std::vector<Maneuver> merge_maneuvers(
    const std::vector<Progress>& progress,
    const std::vector<Orientation>& orientations);

ManeuverSequence to_maneuver_sequence(const CognitiveRouteDescription& crd);

// avg_score: components present (capped at 3N) over 3N. avg_progress:
// complete steps before the first defective one, over N; 1.0 when clean.
RouteScore score_route(const PartialRoute& candidate, std::size_t reference_n);

// One sentence per step: "Go straight to a {landmark}, then {turn left|turn
// right|stop}." Re-parsing the result reproduces the identical description.
std::string render_canonical(const CognitiveRouteDescription& crd);

nlohmann::json to_json(const CognitiveRouteDescription& crd);
CognitiveRouteDescription crd_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PartialRoute& route);
PartialRoute partial_route_from_json(const nlohmann::json& j);

}  // namespace langnav::route

#endif  // LANGNAV_ROUTE_ROUTE_H_
