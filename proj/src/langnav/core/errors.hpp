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

#ifndef LANGNAV_CORE_ERRORS_H_
#define LANGNAV_CORE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace langnav {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Route text that cannot be shaped into a valid route description.
class MalformedRouteError : public Error {
 public:
  MalformedRouteError(const std::string& message, std::size_t sentence_index)
      : Error(message + " (sentence " + std::to_string(sentence_index) + ")"),
        sentence_index_(sentence_index) {}

  std::size_t sentence_index() const { return sentence_index_; }

 private:
  std::size_t sentence_index_;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class OutOfBoundsError : public Error {
 public:
  using Error::Error;
};

class PlanExhaustedError : public Error {
 public:
  using Error::Error;
};

// Suite/scenario configuration problems; `field` is the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace langnav

#endif  // LANGNAV_CORE_ERRORS_H_
