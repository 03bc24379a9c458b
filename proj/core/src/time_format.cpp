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

#include "bpmeasure/time_format.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace bpm::timefmt {
namespace {

std::optional<std::int64_t> parse_uint(std::string_view text, std::size_t max_digits = 12) {
  if (text.empty() || text.size() > max_digits) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) return std::nullopt;
  return value;
}

}  // namespace

std::optional<std::int64_t> parse_clock(std::string_view text) {
  auto c1 = text.find(':');
  if (c1 == std::string_view::npos) return std::nullopt;
  auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) return std::nullopt;
  auto h = parse_uint(text.substr(0, c1), 9);
  std::string_view mm = text.substr(c1 + 1, c2 - c1 - 1);
  std::string_view ss = text.substr(c2 + 1);
  if (mm.size() != 2 || ss.size() != 2) return std::nullopt;
  auto m = parse_uint(mm);
  auto s = parse_uint(ss);
  if (!h || !m || !s || *m >= 60 || *s >= 60) return std::nullopt;
  return *h * 3600 + *m * 60 + *s;
}

std::optional<std::int64_t> parse_iso(std::string_view text) {
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' '))
    return std::nullopt;
  auto y = parse_uint(text.substr(0, 4));
  auto mo = parse_uint(text.substr(5, 2));
  auto d = parse_uint(text.substr(8, 2));
  if (!y || !mo || !d) return std::nullopt;
  std::string_view clock = text.substr(11);
  if (clock.size() != 8 || clock[2] != ':') return std::nullopt;
  auto secs = parse_clock(clock);
  if (!secs || *secs >= kSecondsPerDay) return std::nullopt;
  using namespace std::chrono;
  year_month_day ymd{year{static_cast<int>(*y)}, month{static_cast<unsigned>(*mo)},
                     day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  return days * kSecondsPerDay + *secs;
}

std::optional<std::int64_t> parse_timepoint(std::string_view text, std::int64_t reference_day_start) {
  if (auto iso = parse_iso(text)) return iso;
  auto secs = parse_clock(text);
  if (!secs || *secs >= kSecondsPerDay) return std::nullopt;
  return reference_day_start + *secs;
}

std::optional<std::int64_t> parse_duration(std::string_view text) {
  if (text.find(':') != std::string_view::npos) return parse_clock(text);
  std::size_t i = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  auto n = parse_uint(text.substr(0, i), 12);
  if (!n) return std::nullopt;
  std::string_view unit = text.substr(i);
  if (unit == "s" || unit == "sec") return *n;
  if (unit == "min") return *n * 60;
  if (unit == "h" || unit == "hour") return *n * 3600;
  return std::nullopt;
}

std::string format_clock(std::int64_t seconds) {
  bool neg = seconds < 0;
  std::uint64_t s = neg ? static_cast<std::uint64_t>(-(seconds + 1)) + 1 : static_cast<std::uint64_t>(seconds);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%llu:%02llu:%02llu", neg ? "-" : "",
                static_cast<unsigned long long>(s / 3600), static_cast<unsigned long long>((s / 60) % 60),
                static_cast<unsigned long long>(s % 60));
  return buf;
}

std::string format_iso(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  std::int64_t days = epoch_seconds / kSecondsPerDay;
  std::int64_t rem = epoch_seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::string format_timepoint(std::int64_t epoch_seconds) {
  if (epoch_seconds >= 0 && epoch_seconds < kSecondsPerDay) return format_clock(epoch_seconds);
  return format_iso(epoch_seconds);
}

}  // namespace bpm::timefmt
