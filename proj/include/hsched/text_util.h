// Copyright 2026 The hsched Authors.
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

#ifndef HSCHED_TEXT_UTIL_H_
#define HSCHED_TEXT_UTIL_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsched {

// Raised for malformed or inconsistent user input. The CLI maps it to exit
// status 1; every other exception is treated as an internal error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public InputError {
 public:
  using InputError::InputError;
};

std::string_view Trim(std::string_view s);

// Splits on `sep` without any quoting rules.
std::vector<std::string_view> SplitFields(std::string_view line, char sep);

// Splits text into lines, dropping trailing '\r'.
std::vector<std::string_view> SplitLines(std::string_view text);

std::optional<int64_t> ParseInt64(std::string_view s);
std::optional<double> ParseDouble(std::string_view s);

// Six significant digits; used for every human-facing report.
std::string FormatNumber(double v);

// Shortest representation that parses back to the same double; used for
// machine-readable data files.
std::string FormatExact(double v);

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view data);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace hsched

#endif  // HSCHED_TEXT_UTIL_H_
