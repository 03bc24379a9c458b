// Copyright 2026 The bpmeasure Authors
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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Minimal CSV dialect: comma separator, optional double-quote quoting with ""
// escapes, LF or CRLF line endings, no embedded newlines.
namespace bpm::csv {

struct Line {
  int number = 0;  // 1-based
  std::string_view text;
};

// Splits on '\n', strips a trailing '\r'. A trailing empty line is dropped.
std::vector<Line> split_lines(std::string_view text);

// Returns nullopt on an unterminated or malformed quoted field.
std::optional<std::vector<std::string>> split_fields(std::string_view line);

std::string quote(std::string_view field);
std::string join(const std::vector<std::string>& fields);

}  // namespace bpm::csv
