// Copyright 2026 The QFDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace qfdp {

// Doubles are serialized with 17 significant digits so every value
// round-trips bit-exactly through text.
std::string format_double(double value);

std::string format_doubles(std::span<const double> values);

template <typename Container>
std::string format_doubles(const Container& values) {
  return format_doubles(std::span<const double>(values.data(), values.size()));
}

// Parses one double; throws std::runtime_error when `text` is not exactly a
// number.
double parse_double(const std::string& text);

// Parses a space-separated list of doubles.
std::vector<double> parse_doubles(const std::string& text);

}  // namespace qfdp
