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

#include "bpmeasure/execution_log.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "bpmeasure/csv.hpp"
#include "bpmeasure/error.hpp"
#include "bpmeasure/time_format.hpp"

namespace bpm {
namespace {

constexpr const char* kColumns[] = {"No", "Object Type", "Object", "Process ID", "Start Time", "End Time",
                                    "Processing Time", "Performer"};

std::string lower_trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string row_label(const LogRecord& r) { return "row " + std::to_string(r.no); }

}  // namespace

std::string_view to_string(ObjectType type) {
  switch (type) {
    case ObjectType::BusinessProcess: return "Business Process";
    case ObjectType::Task: return "Task";
    case ObjectType::Decision: return "Decision";
  }
  return "Task";
}

std::optional<ObjectType> parse_object_type(std::string_view text) {
  std::string t = lower_trim(text);
  if (t == "business process" || t == "businessprocess" || t == "process") return ObjectType::BusinessProcess;
  if (t == "task") return ObjectType::Task;
  if (t == "decision") return ObjectType::Decision;
  return std::nullopt;
}

bool LogRecord::same_fields(const LogRecord& o) const {
  return object_type == o.object_type && object == o.object && process_id == o.process_id && start == o.start &&
         end == o.end && processing_time == o.processing_time && performer == o.performer;
}

ExecutionLog parse_log(std::string_view text, const LogParseOptions& options) {
  auto lines = csv::split_lines(text);
  auto first = std::find_if(lines.begin(), lines.end(), [](const csv::Line& l) { return !trim(l.text).empty(); });
  if (first == lines.end()) throw SchemaError("missing header row");
  auto header = csv::split_fields(first->text);
  if (!header || header->size() != 8) throw SchemaError("header must have the 8 columns: " + std::string(kLogHeader));
  for (std::size_t i = 0; i < 8; ++i) {
    if (lower_trim((*header)[i]) != lower_trim(kColumns[i])) {
      throw SchemaError("header column " + std::to_string(i + 1) + " must be '" + kColumns[i] + "'");
    }
  }

  ExecutionLog log;
  for (auto it = first + 1; it != lines.end(); ++it) {
    if (trim(it->text).empty()) continue;
    const int row = it->number;
    auto fields = csv::split_fields(it->text);
    if (!fields) throw RowError(row, "-", "malformed quoting");
    if (fields->size() != 8) throw RowError(row, "-", "expected 8 fields, found " + std::to_string(fields->size()));
    auto cell = [&](int i) { return trim((*fields)[static_cast<std::size_t>(i)]); };

    LogRecord r;
    {
      std::string_view no = cell(0);
      auto [ptr, ec] = std::from_chars(no.data(), no.data() + no.size(), r.no);
      if (no.empty() || ec != std::errc() || ptr != no.data() + no.size() || r.no <= 0)
        throw RowError(row, kColumns[0], "not a positive integer");
      if (!log.records.empty() && r.no <= log.records.back().no)
        throw RowError(row, kColumns[0], "row numbers must be strictly increasing");
    }
    auto type = parse_object_type(cell(1));
    if (!type) throw RowError(row, kColumns[1], "expected Business Process, Task or Decision");
    r.object_type = *type;
    r.object = std::string(cell(2));
    if (r.object.empty()) throw RowError(row, kColumns[2], "empty object name");
    r.process_id = std::string(cell(3));
    if (r.process_id.empty()) throw RowError(row, kColumns[3], "empty process id");
    for (int c : {4, 5}) {
      std::string_view v = cell(c);
      if (v.empty()) continue;
      auto t = timefmt::parse_timepoint(v, options.reference_day_start);
      if (!t) throw RowError(row, kColumns[c], "not a time (H:MM:SS or YYYY-MM-DDTHH:MM:SS)");
      (c == 4 ? r.start : r.end) = *t;
    }
    if (r.start && r.end && *r.start > *r.end) throw RowError(row, kColumns[5], "end time before start time");
    if (std::string_view v = cell(6); !v.empty()) {
      auto d = timefmt::parse_clock(v);
      if (!d) throw RowError(row, kColumns[6], "not a duration H:MM:SS");
      r.processing_time = *d;
    }
    if (std::string_view v = cell(7); !v.empty()) r.performer = std::string(v);
    log.records.push_back(std::move(r));
  }
  return log;
}

std::string render_log(const ExecutionLog& log) {
  std::string out(kLogHeader);
  out += '\n';
  for (const auto& r : log.records) {
    out += csv::join({std::to_string(r.no), std::string(to_string(r.object_type)), r.object, r.process_id,
                      r.start ? timefmt::format_timepoint(*r.start) : "", r.end ? timefmt::format_timepoint(*r.end) : "",
                      r.processing_time ? timefmt::format_clock(*r.processing_time) : "", r.performer.value_or("")});
    out += '\n';
  }
  return out;
}

std::vector<std::string> instances(const ExecutionLog& log) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : log.records) {
    if (seen.insert(r.process_id).second) out.push_back(r.process_id);
  }
  return out;
}

std::vector<Diagnostic> validate_log(const ExecutionLog& log, const ProcessModel& model, bool strict) {
  std::vector<Diagnostic> out;

  // which processes own each task/decision name, and who calls each process
  std::map<std::string, std::set<std::string>> task_owner;
  std::map<std::string, std::set<std::string>> decision_owner;
  std::map<std::string, std::set<std::string>> callers;
  for (const auto& p : model.processes) {
    for (const auto& c : p.children) {
      if (std::holds_alternative<Task>(c)) task_owner[name_of(c)].insert(p.name);
      if (std::holds_alternative<Decision>(c)) decision_owner[name_of(c)].insert(p.name);
      if (const auto* call = std::get_if<SubprocessCall>(&c)) callers[call->target].insert(p.name);
    }
  }

  std::set<std::pair<std::string, std::string>> process_rows;  // (process, id)
  std::set<std::string> ids_with_process_row;
  for (const auto& r : log.records) {
    if (r.object_type == ObjectType::BusinessProcess) {
      process_rows.insert({r.object, r.process_id});
      ids_with_process_row.insert(r.process_id);
    }
  }
  std::set<std::string> orphan_ids;
  for (const auto& id : instances(log)) {
    if (!ids_with_process_row.count(id)) {
      orphan_ids.insert(id);
      out.push_back(make_error("ORPHAN_INSTANCE", id, "process id has no Business Process row"));
    }
  }

  std::map<std::pair<std::string, std::string>, std::vector<const LogRecord*>> seen;  // (id, object)
  for (const auto& r : log.records) {
    auto& bucket = seen[{r.process_id, r.object}];
    for (const LogRecord* prev : bucket) {
      if (prev->same_fields(r)) {
        out.push_back(make_warning("DUPLICATE_ROW", row_label(r),
                                   "identical to row " + std::to_string(prev->no) + "; ignored during evaluation"));
        break;
      }
    }
    bucket.push_back(&r);

    if (r.start && r.end && r.processing_time && *r.processing_time != *r.end - *r.start) {
      out.push_back(make_info("PT_SPAN_MISMATCH", row_label(r),
                              "processing time " + timefmt::format_clock(*r.processing_time) + " differs from end - start " +
                                  timefmt::format_clock(*r.end - *r.start)));
    }

    // name resolution and kind agreement
    std::set<std::string> owners;
    bool resolves = false;
    bool other_kind = false;
    switch (r.object_type) {
      case ObjectType::BusinessProcess:
        resolves = model.find_process(r.object) != nullptr;
        other_kind = task_owner.count(r.object) || decision_owner.count(r.object);
        break;
      case ObjectType::Task:
        resolves = task_owner.count(r.object) > 0;
        if (resolves) owners = task_owner[r.object];
        other_kind = model.find_process(r.object) || decision_owner.count(r.object);
        break;
      case ObjectType::Decision:
        resolves = decision_owner.count(r.object) > 0;
        if (resolves) owners = decision_owner[r.object];
        other_kind = model.find_process(r.object) || task_owner.count(r.object);
        break;
    }
    if (!resolves) {
      if (other_kind) {
        out.push_back(make_error("TYPE_MISMATCH", row_label(r),
                                 "'" + r.object + "' is not a " + std::string(to_string(r.object_type)) + " in the model"));
      } else if (strict) {
        out.push_back(make_error("UNKNOWN_OBJECT", row_label(r), "'" + r.object + "' is not in the model"));
      }
      continue;
    }
    if (orphan_ids.count(r.process_id)) continue;

    if (r.object_type == ObjectType::BusinessProcess) {
      auto it = callers.find(r.object);
      if (it == callers.end()) continue;  // root process
      owners = it->second;
    }
    bool has_parent = std::any_of(owners.begin(), owners.end(),
                                  [&](const std::string& p) { return process_rows.count({p, r.process_id}) > 0; });
    if (!has_parent) {
      out.push_back(make_error("ORPHAN_INSTANCE", row_label(r),
                               "no row for a containing process of '" + r.object + "' in instance " + r.process_id));
    }
  }
  return out;
}

}  // namespace bpm
