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

#include "langnav/harness/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "langnav/core/errors.hpp"

namespace langnav::harness {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_path(const std::string& dotted, int line) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(dotted);
  while (std::getline(in, part, '.')) {
    part = trim(part);
    if (part.empty()) {
      throw ConfigError("line " + std::to_string(line),
                        "empty table path segment in [" + dotted + "]");
    }
    parts.push_back(part);
  }
  if (parts.empty()) {
    throw ConfigError("line " + std::to_string(line), "empty table path");
  }
  return parts;
}

bool looks_like_number(const std::string& v) {
  if (v.empty()) return false;
  std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
  if (i == v.size()) return false;
  bool digit = false;
  for (; i < v.size(); ++i) {
    const char c = v[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != 'e' && c != 'E' && c != '-' && c != '+') {
      return false;
    }
  }
  return digit;
}

nlohmann::json parse_scalar(const std::string& raw, int line) {
  if (raw.empty()) {
    throw ConfigError("line " + std::to_string(line), "missing value");
  }
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') {
      throw ConfigError("line " + std::to_string(line),
                        "unterminated string value");
    }
    return raw.substr(1, raw.size() - 2);
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (looks_like_number(raw)) {
    try {
      if (raw.find_first_of(".eE") == std::string::npos) {
        return std::stoll(raw);
      }
      return std::stod(raw);
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line),
                        "bad numeric value: " + raw);
    }
  }
  return raw;  // bare string
}

nlohmann::json parse_value(const std::string& raw, int line) {
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') {
      throw ConfigError("line " + std::to_string(line),
                        "array value must close on the same line");
    }
    nlohmann::json array = nlohmann::json::array();
    std::string inner = raw.substr(1, raw.size() - 2);
    std::string item;
    std::istringstream in(inner);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      array.push_back(parse_scalar(item, line));
    }
    return array;
  }
  return parse_scalar(raw, line);
}

}  // namespace

nlohmann::json parse_config_text(std::string_view text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* current = &root;

  std::istringstream in{std::string(text)};
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = trim(raw_line);
    if (!line.empty()) {
      // Strip trailing comments outside strings.
      bool in_string = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) {
          line = trim(line.substr(0, i));
          break;
        }
      }
    }
    if (line.empty()) continue;

    if (line.rfind("[[", 0) == 0) {
      if (line.size() < 4 || line.substr(line.size() - 2) != "]]") {
        throw ConfigError("line " + std::to_string(line_no),
                          "malformed [[table]] header");
      }
      const auto path = split_path(line.substr(2, line.size() - 4), line_no);
      nlohmann::json* node = &root;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        node = &(*node)[path[i]];
        if (node->is_array()) node = &node->back();
      }
      nlohmann::json& list = (*node)[path.back()];
      if (!list.is_array()) list = nlohmann::json::array();
      list.push_back(nlohmann::json::object());
      current = &list.back();
    } else if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no),
                          "malformed [table] header");
      }
      const auto path = split_path(line.substr(1, line.size() - 2), line_no);
      nlohmann::json* node = &root;
      for (const std::string& part : path) {
        node = &(*node)[part];
        if (node->is_array()) node = &node->back();
      }
      if (node->is_null()) *node = nlohmann::json::object();
      current = node;
    } else {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("line " + std::to_string(line_no),
                          "expected key = value");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError("line " + std::to_string(line_no), "empty key");
      }
      (*current)[key] = parse_value(value, line_no);
    }
  }
  return root;
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
  }
  return parse_config_text(text);
}

}  // namespace langnav::harness
