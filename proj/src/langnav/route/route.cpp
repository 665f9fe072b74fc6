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

#include "langnav/route/route.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "langnav/core/errors.hpp"

namespace langnav::route {
namespace {

enum class TokenKind { kWord, kComma, kSentenceEnd };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t sentence = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string word;
  std::size_t sentence = 0;
  auto flush_word = [&] {
    if (!word.empty()) {
      tokens.push_back({TokenKind::kWord, word, sentence});
      word.clear();
    }
  };
  for (char raw : text) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c) || raw == '-' || raw == '\'') {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else if (raw == ',' || raw == ';') {
      flush_word();
      tokens.push_back({TokenKind::kComma, ",", sentence});
    } else if (raw == '.' || raw == '!' || raw == '?') {
      flush_word();
      tokens.push_back({TokenKind::kSentenceEnd, ".", sentence});
      ++sentence;
    } else {
      flush_word();
    }
  }
  flush_word();
  return tokens;
}

bool word_at(const std::vector<Token>& tokens, std::size_t i,
             std::string_view w) {
  return i < tokens.size() && tokens[i].kind == TokenKind::kWord &&
         tokens[i].text == w;
}

bool is_article(const std::vector<Token>& tokens, std::size_t i) {
  return word_at(tokens, i, "a") || word_at(tokens, i, "an") ||
         word_at(tokens, i, "the");
}

// Words that end a landmark noun phrase when they follow it.
bool ends_phrase(const std::string& w) {
  static const char* kEnders[] = {"then", "and",  "there", "until", "turn",
                                  "stop", "go",   "to",    "upon",  "after",
                                  "is"};
  return std::find_if(std::begin(kEnders), std::end(kEnders),
                      [&](const char* e) { return w == e; }) !=
         std::end(kEnders);
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : tokens_(tokenize(text)) {}

  PartialRoute run() {
    std::size_t i = 0;
    while (i < tokens_.size()) {
      if (tokens_[i].kind != TokenKind::kWord) {
        ++i;
        continue;
      }
      if (word_at(tokens_, i, "go") && word_at(tokens_, i + 1, "straight")) {
        on_progress(tokens_[i].sentence);
        i += 2;
      } else if (word_at(tokens_, i, "turn") &&
                 (word_at(tokens_, i + 1, "left") ||
                  word_at(tokens_, i + 1, "right"))) {
        on_orientation(tokens_[i + 1].text == "left" ? Orientation::kLeft
                                                     : Orientation::kRight,
                       tokens_[i].sentence);
        i += 2;
      } else if (word_at(tokens_, i, "stop")) {
        on_orientation(Orientation::kStop, tokens_[i].sentence);
        ++i;
      } else if (std::size_t cue = landmark_cue_length(i); cue > 0) {
        i += cue;
        i = collect_landmark(i, tokens_[i - 1].sentence);
      } else {
        ++i;
      }
    }
    close_current();
    return std::move(route_);
  }

 private:
  std::size_t landmark_cue_length(std::size_t i) const {
    if (word_at(tokens_, i, "there") && word_at(tokens_, i + 1, "is") &&
        is_article(tokens_, i + 2)) {
      return 3;
    }
    if ((word_at(tokens_, i, "to") || word_at(tokens_, i, "find")) &&
        is_article(tokens_, i + 1)) {
      return 2;
    }
    return 0;
  }

  std::size_t collect_landmark(std::size_t i, std::size_t sentence) {
    std::string phrase;
    while (i < tokens_.size() && tokens_[i].kind == TokenKind::kWord &&
           !ends_phrase(tokens_[i].text)) {
      if (!phrase.empty()) phrase.push_back(' ');
      phrase += tokens_[i].text;
      ++i;
    }
    if (!phrase.empty()) on_landmark(phrase, sentence);
    return i;
  }

  void on_progress(std::size_t sentence) {
    if (current_.progress || current_.landmark || current_.orientation) {
      close_current();
    }
    touch(sentence);
    current_.progress = Progress::kStraight;
  }

  void on_landmark(const std::string& name, std::size_t sentence) {
    if (current_.landmark || current_.orientation) close_current();
    touch(sentence);
    current_.landmark = name;
  }

  void on_orientation(Orientation o, std::size_t sentence) {
    if (current_.orientation) close_current();
    touch(sentence);
    current_.orientation = o;
    close_current();
  }

  void touch(std::size_t sentence) {
    if (!dirty_) {
      current_.sentence_index = sentence;
      dirty_ = true;
    }
  }

  void close_current() {
    if (dirty_) {
      route_.steps.push_back(std::move(current_));
      current_ = PartialStep{};
      dirty_ = false;
    }
  }

  std::vector<Token> tokens_;
  PartialRoute route_;
  PartialStep current_;
  bool dirty_ = false;
};

}  // namespace

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::kLeft:
      return "left";
    case Orientation::kRight:
      return "right";
    case Orientation::kStop:
      return "stop";
  }
  return "stop";
}

std::string to_string(Maneuver m) {
  switch (m) {
    case Maneuver::kStraight:
      return "straight";
    case Maneuver::kLeft:
      return "left";
    case Maneuver::kRight:
      return "right";
    case Maneuver::kStop:
      return "stop";
  }
  return "stop";
}

std::string to_string(Progress) { return "straight"; }

std::string normalize_landmark(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char raw : text) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) {
        out.push_back(' ');
        pending_space = false;
      }
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  return out;
}

PartialRoute scan_route(std::string_view text) { return Scanner(text).run(); }

CognitiveRouteDescription parse_crd(std::string_view text) {
  PartialRoute partial = scan_route(text);
  if (partial.steps.empty()) {
    throw MalformedRouteError("no landmark found", 0);
  }

  CognitiveRouteDescription crd;
  const std::size_t n = partial.steps.size();
  for (std::size_t i = 0; i < n; ++i) {
    PartialStep& step = partial.steps[i];
    const bool last = (i + 1 == n);
    if (!step.landmark.has_value()) {
      throw MalformedRouteError("no landmark found", step.sentence_index);
    }
    Orientation orientation;
    if (step.orientation.has_value()) {
      orientation = *step.orientation;
      if (!last && orientation == Orientation::kStop) {
        throw MalformedRouteError("stop before the final landmark",
                                  step.sentence_index);
      }
      if (last && orientation != Orientation::kStop) {
        throw MalformedRouteError("no terminal stop", step.sentence_index);
      }
    } else {
      if (!last) {
        throw MalformedRouteError("missing orientation", step.sentence_index);
      }
      orientation = Orientation::kStop;
      crd.implicit_stop = true;
    }
    crd.steps.push_back(RouteStep{Progress::kStraight,
                                  normalize_landmark(*step.landmark),
                                  orientation});
  }
  return crd;
}

ExtractedLists extract_lists(const CognitiveRouteDescription& crd) {
  ExtractedLists lists;
  lists.progress.reserve(crd.size());
  lists.landmarks.reserve(crd.size());
  lists.orientations.reserve(crd.size());
  for (const RouteStep& step : crd.steps) {
    lists.progress.push_back(step.progress);
    lists.landmarks.push_back(step.landmark);
    lists.orientations.push_back(step.orientation);
  }
  return lists;
}

std::vector<Maneuver> merge_maneuvers(
    const std::vector<Progress>& progress,
    const std::vector<Orientation>& orientations) {
  if (progress.size() != orientations.size()) {
    throw LengthMismatchError("progress and orientation lists differ: " +
                              std::to_string(progress.size()) + " vs " +
                              std::to_string(orientations.size()));
  }
  std::vector<Maneuver> maneuvers;
  maneuvers.reserve(2 * progress.size());
  for (std::size_t i = 0; i < progress.size(); ++i) {
    maneuvers.push_back(Maneuver::kStraight);
    switch (orientations[i]) {
      case Orientation::kLeft:
        maneuvers.push_back(Maneuver::kLeft);
        break;
      case Orientation::kRight:
        maneuvers.push_back(Maneuver::kRight);
        break;
      case Orientation::kStop:
        maneuvers.push_back(Maneuver::kStop);
        break;
    }
  }
  return maneuvers;
}

ManeuverSequence to_maneuver_sequence(const CognitiveRouteDescription& crd) {
  ExtractedLists lists = extract_lists(crd);
  ManeuverSequence seq;
  seq.maneuvers = merge_maneuvers(lists.progress, lists.orientations);
  seq.landmarks = std::move(lists.landmarks);
  return seq;
}

RouteScore score_route(const PartialRoute& candidate,
                       std::size_t reference_n) {
  const double total = 3.0 * static_cast<double>(reference_n);
  std::size_t present = 0;
  for (const PartialStep& step : candidate.steps) {
    present += step.progress.has_value();
    present += step.landmark.has_value();
    present += step.orientation.has_value();
  }
  present = std::min<std::size_t>(present, 3 * reference_n);

  std::size_t complete_prefix = 0;
  while (complete_prefix < reference_n &&
         complete_prefix < candidate.steps.size() &&
         candidate.steps[complete_prefix].complete()) {
    ++complete_prefix;
  }
  RouteScore score;
  score.avg_score = static_cast<double>(present) / total;
  score.avg_progress = complete_prefix >= reference_n
                           ? 1.0
                           : static_cast<double>(complete_prefix) /
                                 static_cast<double>(reference_n);
  return score;
}

std::string render_canonical(const CognitiveRouteDescription& crd) {
  std::ostringstream out;
  for (std::size_t i = 0; i < crd.steps.size(); ++i) {
    if (i > 0) out << ' ';
    const RouteStep& step = crd.steps[i];
    out << "Go straight to a " << step.landmark << ", then ";
    switch (step.orientation) {
      case Orientation::kLeft:
        out << "turn left";
        break;
      case Orientation::kRight:
        out << "turn right";
        break;
      case Orientation::kStop:
        out << "stop";
        break;
    }
    out << '.';
  }
  return out.str();
}

namespace {

Orientation orientation_from_string(const std::string& s) {
  if (s == "left") return Orientation::kLeft;
  if (s == "right") return Orientation::kRight;
  if (s == "stop") return Orientation::kStop;
  throw Error("unknown orientation: " + s);
}

}  // namespace

nlohmann::json to_json(const CognitiveRouteDescription& crd) {
  nlohmann::json steps = nlohmann::json::array();
  for (const RouteStep& step : crd.steps) {
    steps.push_back({{"progress", to_string(step.progress)},
                     {"landmark", step.landmark},
                     {"orientation", to_string(step.orientation)}});
  }
  return nlohmann::json{{"steps", std::move(steps)}};
}

CognitiveRouteDescription crd_from_json(const nlohmann::json& j) {
  CognitiveRouteDescription crd;
  for (const auto& step : j.at("steps")) {
    crd.steps.push_back(RouteStep{
        Progress::kStraight,
        normalize_landmark(step.at("landmark").get<std::string>()),
        orientation_from_string(step.at("orientation").get<std::string>())});
  }
  if (crd.steps.empty()) throw Error("route has no steps");
  for (std::size_t i = 0; i + 1 < crd.steps.size(); ++i) {
    if (crd.steps[i].orientation == Orientation::kStop) {
      throw Error("stop before the final landmark");
    }
  }
  if (crd.steps.back().orientation != Orientation::kStop) {
    throw Error("no terminal stop");
  }
  return crd;
}

nlohmann::json to_json(const PartialRoute& route) {
  nlohmann::json steps = nlohmann::json::array();
  for (const PartialStep& step : route.steps) {
    nlohmann::json s = nlohmann::json::object();
    if (step.progress) s["progress"] = to_string(*step.progress);
    if (step.landmark) s["landmark"] = *step.landmark;
    if (step.orientation) s["orientation"] = to_string(*step.orientation);
    steps.push_back(std::move(s));
  }
  return nlohmann::json{{"steps", std::move(steps)}};
}

PartialRoute partial_route_from_json(const nlohmann::json& j) {
  PartialRoute route;
  for (const auto& step : j.at("steps")) {
    PartialStep s;
    if (step.contains("progress") && !step["progress"].is_null()) {
      s.progress = Progress::kStraight;
    }
    if (step.contains("landmark") && !step["landmark"].is_null()) {
      s.landmark = normalize_landmark(step["landmark"].get<std::string>());
    }
    if (step.contains("orientation") && !step["orientation"].is_null()) {
      s.orientation =
          orientation_from_string(step["orientation"].get<std::string>());
    }
    route.steps.push_back(std::move(s));
  }
  return route;
}

}  // namespace langnav::route
