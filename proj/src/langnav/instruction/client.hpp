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

#ifndef LANGNAV_INSTRUCTION_CLIENT_H_
#define LANGNAV_INSTRUCTION_CLIENT_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "langnav/core/errors.hpp"
#include "langnav/route/route.hpp"

namespace langnav::instruction {

class ServiceUnreachableError : public Error {
 public:
  ServiceUnreachableError(const std::string& message,
                          const std::string& payload)
      : Error(message), payload_(payload) {}
  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
};

class AuthFailureError : public Error {
 public:
  AuthFailureError(const std::string& message, const std::string& payload)
      : Error(message), payload_(payload) {}
  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
};

// The service answered but never produced a parseable route description.
class InvalidCrdError : public Error {
 public:
  InvalidCrdError(const std::string& message, const std::string& payload)
      : Error(message), payload_(payload) {}
  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
};

struct ExemplarPair {
  std::string urd;
  std::string crd;
};

enum class Mode { kRemote, kOffline, kReplay };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode mode);

struct ClientConfig {
  std::string base_url = "http://127.0.0.1:8089/v1/chat/completions";
  std::string model = "default";
  int timeout_ms = 10000;
  std::string api_key_env = "WTW_API_KEY";
  std::string fixture_path;  // replay source; record sink in remote mode
  Mode mode = Mode::kOffline;
};

struct ConversionRequest {
  std::string urd_text;
  std::vector<ExemplarPair> exemplar_pairs;  // at least one
  std::string model;
};

// Conversions only leave this module parse-valid: `crd` is the validated
// description and `crd_text` its canonical rendering.
struct ConversionResult {
  std::string crd_text;
  route::CognitiveRouteDescription crd;
  nlohmann::json raw_response;
  double latency_ms = 0.0;
};

// In-context exemplars shipped with the project (not drawn from any external
// corpus); callers may substitute their own.
std::vector<ExemplarPair> default_exemplars();

// Rule-based repair: normalize synonym phrasings onto the canonical verbs,
// re-scan, and validate. Deterministic; no I/O. Throws MalformedRouteError
// when the text cannot be repaired into a valid description.
ConversionResult convert_offline(const std::string& urd_text);

// The phrase-normalization pass used by convert_offline, exposed for tests.
std::string normalize_phrasing(const std::string& text);

class InstructionClient {
 public:
  explicit InstructionClient(ClientConfig config);

  // Dispatches on config.mode. Remote and replay go through the chat
  // endpoint protocol (one automatic re-prompt on an invalid reply);
  // offline uses convert_offline.
  ConversionResult convert(const std::string& urd_text);

  ConversionResult convert_remote(const ConversionRequest& request);

  const ClientConfig& config() const { return config_; }

 private:
  nlohmann::json post_chat(const nlohmann::json& body);
  nlohmann::json post_http(const nlohmann::json& body);
  nlohmann::json post_replay(const nlohmann::json& body);
  void record_fixture(const nlohmann::json& request,
                      const nlohmann::json& response);

  ClientConfig config_;
};

}  // namespace langnav::instruction

#endif  // LANGNAV_INSTRUCTION_CLIENT_H_
