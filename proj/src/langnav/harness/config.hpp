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

#ifndef LANGNAV_HARNESS_CONFIG_H_
#define LANGNAV_HARNESS_CONFIG_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace langnav::harness {

// Structured-text suite config. Line oriented:
//
//   # comment
//   key = value            value: "string", bare string, number, bool,
//                          or a one-line array [v1, v2, ...]
//   [table.subtable]       opens (creating as needed) a nested table
//   [[table.list]]         appends an entry to an array of tables
//
// Keys land in the most recently opened table. The result is plain JSON;
// files whose first significant character is '{' are read as JSON directly.
nlohmann::json parse_config_text(std::string_view text);

// Reads .json or structured text based on content; throws ConfigError.
nlohmann::json load_config_file(const std::string& path);

}  // namespace langnav::harness

#endif  // LANGNAV_HARNESS_CONFIG_H_
