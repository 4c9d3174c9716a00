// Copyright 2026 The otgeo Authors
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
#include "otgeo/cli/key_values.hpp"

#include <charconv>
#include <istream>
#include <string_view>

#include "otgeo/error.hpp"

namespace otgeo::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool to_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

void bad_spec(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kBadSpec, "line " + std::to_string(line) + ": " + message);
}

std::vector<KeyValue> parse_key_values(std::istream& in) {
  std::vector<KeyValue> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) bad_spec(line, "expected key = value");
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) bad_spec(line, "empty key");
    out.push_back({line, std::string(key), std::string(trim(text.substr(eq + 1)))});
  }
  return out;
}

double parse_real(const KeyValue& entry) {
  double v = 0.0;
  if (!to_real(entry.value, v)) {
    bad_spec(entry.line, "'" + entry.key + "' expects a number, got '" + entry.value + "'");
  }
  return v;
}

long long parse_integer(const KeyValue& entry, long long min_value) {
  long long v = 0;
  const auto& s = entry.value;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || v < min_value) {
    bad_spec(entry.line, "'" + entry.key + "' expects an integer >= " +
                             std::to_string(min_value) + ", got '" + s + "'");
  }
  return v;
}

std::vector<double> parse_reals(const KeyValue& entry) {
  std::vector<double> out;
  std::string_view rest = entry.value;
  while (true) {
    const auto start = rest.find_first_not_of(" \t,");
    if (start == std::string_view::npos) break;
    rest.remove_prefix(start);
    const auto end = rest.find_first_of(" \t,");
    const auto token = rest.substr(0, end);
    double v = 0.0;
    if (!to_real(token, v)) {
      bad_spec(entry.line, "'" + entry.key + "': cannot parse '" + std::string(token) + "'");
    }
    out.push_back(v);
    if (end == std::string_view::npos) break;
    rest.remove_prefix(end);
  }
  if (out.empty()) bad_spec(entry.line, "'" + entry.key + "' has no values");
  return out;
}

}  // namespace otgeo::cli
