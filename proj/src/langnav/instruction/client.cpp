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

#include "langnav/instruction/client.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>

#include "httplib.h"

namespace langnav::instruction {
namespace {

constexpr const char* kSystemPrompt =
    "You convert informal route instructions into a canonical route "
    "description. Answer with one sentence per step, exactly of the form "
    "\"Go straight to a <landmark>, then <turn left|turn right|stop>.\" "
    "The final sentence must end with \"then stop.\"";

struct ParsedUrl {
  bool https = false;
  std::string host;
  int port = 0;
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  ParsedUrl out;
  std::string rest;
  if (url.rfind("https://", 0) == 0) {
    out.https = true;
    out.port = 443;
    rest = url.substr(8);
  } else if (url.rfind("http://", 0) == 0) {
    out.port = 80;
    rest = url.substr(7);
  } else {
    throw Error("base_url must start with http:// or https://");
  }
  const std::size_t slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  out.path = slash == std::string::npos ? "/" : rest.substr(slash);
  const std::size_t colon = authority.find(':');
  if (colon != std::string::npos) {
    out.port = std::stoi(authority.substr(colon + 1));
    authority = authority.substr(0, colon);
  }
  out.host = authority;
  if (out.host.empty()) throw Error("base_url has no host");
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string extract_content(const nlohmann::json& response) {
  try {
    return response.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidCrdError("response has no choices[0].message.content",
                          response.dump());
  }
}

nlohmann::json build_chat_body(const ConversionRequest& request,
                               const std::string& model) {
  nlohmann::json messages = nlohmann::json::array();
  messages.push_back({{"role", "system"}, {"content", kSystemPrompt}});
  for (const ExemplarPair& pair : request.exemplar_pairs) {
    messages.push_back({{"role", "user"}, {"content", pair.urd}});
    messages.push_back({{"role", "assistant"}, {"content", pair.crd}});
  }
  messages.push_back({{"role", "user"}, {"content", request.urd_text}});
  return nlohmann::json{{"model", model}, {"messages", std::move(messages)}};
}

}  // namespace

Mode mode_from_string(const std::string& s) {
  if (s == "remote") return Mode::kRemote;
  if (s == "offline") return Mode::kOffline;
  if (s == "replay") return Mode::kReplay;
  throw Error("unknown converter mode: " + s);
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kRemote:
      return "remote";
    case Mode::kOffline:
      return "offline";
    case Mode::kReplay:
      return "replay";
  }
  return "offline";
}

std::vector<ExemplarPair> default_exemplars() {
  return {
      {"head over to the trashcan and hang a left, then keep going until "
       "you see a box and stop there",
       "Go straight to a trashcan, then turn left. Go straight to a box, "
       "then stop."},
      {"walk up to the big tree, take a right, the bench is right after",
       "Go straight to a tree, then turn right. Go straight to a bench, "
       "then stop."},
      {"find the red door and stop",
       "Go straight to a red door, then stop."},
  };
}

std::string normalize_phrasing(const std::string& text) {
  static const std::vector<std::pair<std::regex, std::string>> kRules = {
      {std::regex(R"(\b(hang|take|make)\s+a\s+left\b)", std::regex::icase),
       "turn left"},
      {std::regex(R"(\b(hang|take|make)\s+a\s+right\b)", std::regex::icase),
       "turn right"},
      {std::regex(R"(\bbear\s+(left|right)\b)", std::regex::icase),
       "turn $1"},
      {std::regex(R"(\bcome\s+to\s+a\s+stop\b)", std::regex::icase), "stop"},
      {std::regex(R"(\bhalt\b)", std::regex::icase), "stop"},
      {std::regex(
           R"(\b(head(\s+over)?|walk(\s+up)?|drive|move|proceed|continue|keep\s+going|go)\s+(over\s+)?(to|towards?|until\s+you\s+(see|reach|find))\b)",
           std::regex::icase),
       "go straight to"},
      {std::regex(R"(\b(head|walk|drive|proceed)\s+(straight|forward|ahead)\b)",
                  std::regex::icase),
       "go straight"},
      {std::regex(R"(\bkeep\s+going\b)", std::regex::icase), "go straight"},
      {std::regex(R"(\bgo\s+(forward|ahead)\b)", std::regex::icase),
       "go straight"},
  };
  std::string out = text;
  for (const auto& [pattern, replacement] : kRules) {
    out = std::regex_replace(out, pattern, replacement);
  }
  return out;
}

ConversionResult convert_offline(const std::string& urd_text) {
  const std::string repaired = normalize_phrasing(urd_text);
  route::CognitiveRouteDescription crd = route::parse_crd(repaired);
  ConversionResult result;
  result.crd_text = route::render_canonical(crd);
  result.crd = std::move(crd);
  result.raw_response = {{"converter", "offline"},
                         {"normalized_text", repaired}};
  result.latency_ms = 0.0;
  return result;
}

InstructionClient::InstructionClient(ClientConfig config)
    : config_(std::move(config)) {}

ConversionResult InstructionClient::convert(const std::string& urd_text) {
  if (config_.mode == Mode::kOffline) return convert_offline(urd_text);
  ConversionRequest request;
  request.urd_text = urd_text;
  request.exemplar_pairs = default_exemplars();
  request.model = config_.model;
  return convert_remote(request);
}

ConversionResult InstructionClient::convert_remote(
    const ConversionRequest& request) {
  if (request.exemplar_pairs.empty()) {
    throw Error("conversion request needs at least one exemplar pair");
  }
  const auto start = std::chrono::steady_clock::now();

  nlohmann::json body = build_chat_body(
      request, request.model.empty() ? config_.model : request.model);
  nlohmann::json response = post_chat(body);
  std::string content = trim(extract_content(response));

  std::string parse_error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      route::CognitiveRouteDescription crd = route::parse_crd(content);
      ConversionResult result;
      result.crd_text = route::render_canonical(crd);
      result.crd = std::move(crd);
      result.raw_response = std::move(response);
      result.latency_ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - start)
              .count();
      return result;
    } catch (const MalformedRouteError& e) {
      parse_error = e.what();
    }
    if (attempt == 0) {
      // One automatic re-prompt carrying the parse failure back.
      body["messages"].push_back({{"role", "assistant"}, {"content", content}});
      body["messages"].push_back(
          {{"role", "user"},
           {"content", std::string("That reply is not a valid route "
                                   "description (") +
                           parse_error +
                           "). Answer again using only the canonical "
                           "sentence form."}});
      response = post_chat(body);
      content = trim(extract_content(response));
    }
  }
  throw InvalidCrdError("service reply failed to parse twice: " + parse_error,
                        response.dump());
}

nlohmann::json InstructionClient::post_chat(const nlohmann::json& body) {
  if (config_.mode == Mode::kReplay) return post_replay(body);
  nlohmann::json response = post_http(body);
  if (!config_.fixture_path.empty()) record_fixture(body, response);
  return response;
}

nlohmann::json InstructionClient::post_http(const nlohmann::json& body) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw AuthFailureError(
        "credential missing: set " + config_.api_key_env, "");
  }

  const ParsedUrl url = parse_url(config_.base_url);
  httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};
  auto send = [&](auto& client) -> httplib::Result {
    client.set_connection_timeout(config_.timeout_ms / 1000,
                                  (config_.timeout_ms % 1000) * 1000);
    client.set_read_timeout(config_.timeout_ms / 1000,
                            (config_.timeout_ms % 1000) * 1000);
    return client.Post(url.path, headers, body.dump(), "application/json");
  };

  httplib::Result res = [&] {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.https) {
      httplib::SSLClient client(url.host, url.port);
      return send(client);
    }
#else
    if (url.https) {
      throw Error("built without TLS support; use an http:// base_url");
    }
#endif
    httplib::Client client(url.host, url.port);
    return send(client);
  }();

  if (!res) {
    throw ServiceUnreachableError(
        "request to " + config_.base_url + " failed: " +
            httplib::to_string(res.error()),
        "");
  }
  if (res->status == 401 || res->status == 403) {
    throw AuthFailureError("service rejected the credential (HTTP " +
                               std::to_string(res->status) + ")",
                           res->body);
  }
  if (res->status < 200 || res->status >= 300) {
    throw ServiceUnreachableError(
        "service returned HTTP " + std::to_string(res->status), res->body);
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidCrdError(std::string("response body is not JSON: ") +
                              e.what(),
                          res->body);
  }
}

nlohmann::json InstructionClient::post_replay(const nlohmann::json& body) {
  std::ifstream in(config_.fixture_path);
  if (!in) {
    throw ServiceUnreachableError(
        "replay fixture not found: " + config_.fixture_path, "");
  }
  nlohmann::json fixture;
  in >> fixture;
  for (const auto& entry : fixture.at("entries")) {
    if (entry.at("request") == body) return entry.at("response");
  }
  throw ServiceUnreachableError(
      "replay fixture has no entry for this request", body.dump());
}

void InstructionClient::record_fixture(const nlohmann::json& request,
                                       const nlohmann::json& response) {
  nlohmann::json fixture{{"entries", nlohmann::json::array()}};
  {
    std::ifstream in(config_.fixture_path);
    if (in) {
      try {
        in >> fixture;
      } catch (const nlohmann::json::exception&) {
        fixture = {{"entries", nlohmann::json::array()}};
      }
    }
  }
  fixture["entries"].push_back(
      {{"request", request}, {"response", response}});
  std::ofstream out(config_.fixture_path);
  out << fixture.dump(2) << '\n';
}

}  // namespace langnav::instruction
