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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Clock and timestamp text used by logs, measure literals and model files.
// Time points are seconds since 1970-01-01T00:00:00 (no time zone). A bare
// clock time like "9:05:34" is pinned to a caller-supplied reference day.
namespace bpm::timefmt {

constexpr std::int64_t kSecondsPerDay = 86400;

// "H:MM:SS" with any number of hour digits; minutes and seconds below 60.
std::optional<std::int64_t> parse_clock(std::string_view text);

// "YYYY-MM-DDTHH:MM:SS" (or a space instead of 'T').
std::optional<std::int64_t> parse_iso(std::string_view text);

// Bare clock (pinned to `reference_day_start`, which must be a day boundary)
// or full ISO timestamp.
std::optional<std::int64_t> parse_timepoint(std::string_view text, std::int64_t reference_day_start = 0);

// Clock form, or "<n><unit>" with unit one of s, sec, min, h, hour.
std::optional<std::int64_t> parse_duration(std::string_view text);

// Negative durations get a leading '-'.
std::string format_clock(std::int64_t seconds);

// Bare clock for points on day 0, ISO otherwise.
std::string format_timepoint(std::int64_t epoch_seconds);
std::string format_iso(std::int64_t epoch_seconds);

}  // namespace bpm::timefmt
