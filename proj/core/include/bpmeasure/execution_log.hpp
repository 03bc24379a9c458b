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
#include <vector>

#include "bpmeasure/diagnostic.hpp"
#include "bpmeasure/model.hpp"

namespace bpm {

enum class ObjectType { BusinessProcess, Task, Decision };

// "Business Process", "Task", "Decision".
std::string_view to_string(ObjectType type);
std::optional<ObjectType> parse_object_type(std::string_view text);

// One row of an execution log. Times are seconds since the epoch, durations
// are seconds.
struct LogRecord {
  std::int64_t no = 0;
  ObjectType object_type = ObjectType::Task;
  std::string object;
  std::string process_id;
  std::optional<std::int64_t> start;
  std::optional<std::int64_t> end;
  std::optional<std::int64_t> processing_time;
  std::optional<std::string> performer;

  // Equal in every field except `no`.
  bool same_fields(const LogRecord& other) const;

  bool operator==(const LogRecord&) const = default;
};

struct ExecutionLog {
  std::vector<LogRecord> records;  // strictly ascending `no`

  bool operator==(const ExecutionLog&) const = default;
};

inline constexpr std::string_view kLogHeader =
    "No,Object Type,Object,Process ID,Start Time,End Time,Processing Time,Performer";

struct LogParseOptions {
  // Day that bare H:MM:SS timestamps are pinned to (seconds since epoch,
  // multiple of 86400).
  std::int64_t reference_day_start = 0;
};

// Throws SchemaError for a bad header and RowError {row, column, reason} for
// a bad data row. Empty cells become absent fields.
ExecutionLog parse_log(std::string_view csv, const LogParseOptions& options = {});

// Header plus one line per record; times on day 0 render as bare clocks.
std::string render_log(const ExecutionLog& log);

// Structural checks against a model. With `strict`, object names must also
// resolve in the model. Duplicate rows are warnings; a processing time that
// differs from End - Start is informational.
std::vector<Diagnostic> validate_log(const ExecutionLog& log, const ProcessModel& model, bool strict);

// Distinct process ids in first-appearance order.
std::vector<std::string> instances(const ExecutionLog& log);

}  // namespace bpm
