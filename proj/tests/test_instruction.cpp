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

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "langnav/core/errors.hpp"
#include "langnav/instruction/client.hpp"
#include "langnav/route/route.hpp"

using namespace langnav;

namespace {

// Local chat endpoint stub; replies are scripted per test.
class MockService {
 public:
  explicit MockService(std::vector<std::string> replies)
      : replies_(std::move(replies)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                httplib::Response& res) {
      last_body_ = req.body;
      ++calls_;
      if (req.get_header_value("Authorization") != "Bearer test-key") {
        res.status = 401;
        res.set_content(R"({"error":"bad credential"})", "application/json");
        return;
      }
      const std::size_t i =
          std::min<std::size_t>(calls_ - 1, replies_.size() - 1);
      nlohmann::json message{{"role", "assistant"},
                             {"content", replies_[i]}};
      nlohmann::json body;
      body["choices"] = nlohmann::json::array();
      body["choices"].push_back({{"message", std::move(message)}});
      res.set_content(body.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockService() {
    server_.stop();
    thread_.join();
  }

  int port() const { return port_; }
  int calls() const { return calls_; }
  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) +
           "/v1/chat/completions";
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  std::vector<std::string> replies_;
  int port_ = 0;
  std::atomic<int> calls_{0};
  std::string last_body_;
};

instruction::ClientConfig remote_config(const std::string& url) {
  instruction::ClientConfig config;
  config.mode = instruction::Mode::kRemote;
  config.base_url = url;
  config.timeout_ms = 2000;
  return config;
}

struct EnvKey {
  EnvKey() { ::setenv("WTW_API_KEY", "test-key", 1); }
  ~EnvKey() { ::unsetenv("WTW_API_KEY"); }
};

const char* kCanonical =
    "Go straight to a trashcan, then turn left. Go straight to a box, then "
    "stop.";

}  // namespace

TEST_CASE("offline conversion repairs the documented example") {
  const auto result = instruction::convert_offline(
      "go straight to a trashcan then turn left then go straight to a box "
      "and stop");
  CHECK(result.crd.size() == 2);
  CHECK(result.crd.steps[0].landmark == "trashcan");
  CHECK(result.crd.steps[0].orientation == route::Orientation::kLeft);
  CHECK(result.crd.steps[1].landmark == "box");
  CHECK(result.crd.steps[1].orientation == route::Orientation::kStop);
  CHECK(result.crd_text == kCanonical);
}

TEST_CASE("offline conversion is a fixed point on canonical text") {
  const auto result = instruction::convert_offline(kCanonical);
  CHECK(result.crd_text == kCanonical);
  CHECK(result.crd == route::parse_crd(kCanonical));
}

TEST_CASE("offline conversion rejects an empty instruction") {
  CHECK_THROWS_AS(instruction::convert_offline(""), MalformedRouteError);
}

TEST_CASE("phrase normalization maps synonyms onto canonical verbs") {
  CHECK(instruction::normalize_phrasing("hang a left at the chair") ==
        "turn left at the chair");
  CHECK(instruction::normalize_phrasing("take a right") == "turn right");
  CHECK(instruction::normalize_phrasing("head over to the bins") ==
        "go straight to the bins");
  CHECK(instruction::normalize_phrasing("walk to a tree") ==
        "go straight to a tree");
  CHECK(instruction::normalize_phrasing("keep going until you see a box") ==
        "go straight to a box");
  CHECK(instruction::normalize_phrasing("come to a stop") == "stop");
}

TEST_CASE("offline conversion repairs synonym-heavy instructions") {
  const auto result = instruction::convert_offline(
      "head over to the trashcan and hang a left, then keep going until you "
      "see a box and stop there");
  CHECK(result.crd_text == kCanonical);
}

TEST_CASE("remote conversion extracts and validates the first choice") {
  EnvKey key;
  MockService service({kCanonical});
  instruction::InstructionClient client(remote_config(service.url()));

  const auto result = client.convert("please get to the box somehow");
  CHECK(result.crd_text == kCanonical);
  CHECK(result.crd.size() == 2);
  CHECK(result.latency_ms >= 0.0);
  CHECK(service.calls() == 1);
}

TEST_CASE("remote conversion of canonical text is a fixed point") {
  EnvKey key;
  MockService service({kCanonical});
  instruction::InstructionClient client(remote_config(service.url()));
  const auto result = client.convert(kCanonical);
  CHECK(result.crd == route::parse_crd(kCanonical));
}

TEST_CASE("one re-prompt is attempted before failing") {
  EnvKey key;
  SUBCASE("second reply passes") {
    MockService service({"sorry, no landmarks here", kCanonical});
    instruction::InstructionClient client(remote_config(service.url()));
    const auto result = client.convert("whatever");
    CHECK(result.crd_text == kCanonical);
    CHECK(service.calls() == 2);
  }
  SUBCASE("two invalid replies raise InvalidCrdError") {
    MockService service({"nope", "still nope"});
    instruction::InstructionClient client(remote_config(service.url()));
    CHECK_THROWS_AS(client.convert("whatever"),
                    instruction::InvalidCrdError);
    CHECK(service.calls() == 2);
  }
}

TEST_CASE("an unreachable endpoint raises ServiceUnreachableError") {
  EnvKey key;
  instruction::ClientConfig config =
      remote_config("http://127.0.0.1:9/v1/chat/completions");
  config.timeout_ms = 300;
  instruction::InstructionClient client(config);
  CHECK_THROWS_AS(client.convert("anything"),
                  instruction::ServiceUnreachableError);
}

TEST_CASE("a rejected credential raises AuthFailureError") {
  ::setenv("WTW_API_KEY", "wrong-key", 1);
  MockService service({kCanonical});
  instruction::InstructionClient client(remote_config(service.url()));
  CHECK_THROWS_AS(client.convert("anything"), instruction::AuthFailureError);
  ::unsetenv("WTW_API_KEY");
}

TEST_CASE("a missing credential fails before any request") {
  ::unsetenv("WTW_API_KEY");
  instruction::InstructionClient client(
      remote_config("http://127.0.0.1:9/v1/chat/completions"));
  CHECK_THROWS_AS(client.convert("anything"), instruction::AuthFailureError);
}

TEST_CASE("recorded fixtures replay byte-deterministically with no network") {
  EnvKey key;
  const std::string fixture =
      (std::filesystem::temp_directory_path() / "langnav_fixture.json")
          .string();
  std::filesystem::remove(fixture);

  std::string recorded_text;
  {
    MockService service({kCanonical});
    instruction::ClientConfig config = remote_config(service.url());
    config.fixture_path = fixture;
    instruction::InstructionClient client(config);
    recorded_text = client.convert("please get to the box somehow").crd_text;
  }
  // Server is gone; replay must not touch the network.
  instruction::ClientConfig config = remote_config("http://127.0.0.1:9/none");
  config.mode = instruction::Mode::kReplay;
  config.fixture_path = fixture;
  instruction::InstructionClient client(config);

  const auto first = client.convert("please get to the box somehow");
  const auto second = client.convert("please get to the box somehow");
  CHECK(first.crd_text == recorded_text);
  CHECK(first.crd_text == second.crd_text);
  CHECK(route::to_json(first.crd) == route::to_json(second.crd));

  // A request that was never recorded cannot be served.
  CHECK_THROWS_AS(client.convert("a different instruction"),
                  instruction::ServiceUnreachableError);
  std::filesystem::remove(fixture);
}
