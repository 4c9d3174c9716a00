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
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace otgeo::cli {

// One `key = value` line. Blank lines and lines starting with '#' are skipped.
struct KeyValue {
  std::size_t line = 0;
  std::string key;
  std::string value;
};

// Throws kBadSpec naming the line when a line has no '=' or an empty key.
std::vector<KeyValue> parse_key_values(std::istream& in);

// Value parsers; each throws kBadSpec mentioning `entry.line`.
double parse_real(const KeyValue& entry);
long long parse_integer(const KeyValue& entry, long long min_value);
std::vector<double> parse_reals(const KeyValue& entry);

[[noreturn]] void bad_spec(std::size_t line, const std::string& message);

}  // namespace otgeo::cli
