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

#include "bpmeasure/report.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "bpmeasure/csv.hpp"
#include "bpmeasure/error.hpp"
#include "bpmeasure/evaluator.hpp"
#include "bpmeasure/measure_expr.hpp"

namespace bpm {

std::string_view to_string(Stat stat) {
  switch (stat) {
    case Stat::Min: return "min";
    case Stat::Max: return "max";
    case Stat::Mean: return "mean";
    case Stat::Count: return "count";
  }
  return "?";
}

namespace {

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::vector<Stat> parse_stats(std::string_view text) {
  std::vector<Stat> out;
  for (auto item : split_list(text)) {
    std::optional<Stat> stat;
    for (auto s : {Stat::Min, Stat::Max, Stat::Mean, Stat::Count}) {
      if (item == to_string(s)) stat = s;
    }
    if (!stat) throw ConfigError("unknown statistic '" + std::string(item) + "'");
    if (std::find(out.begin(), out.end(), *stat) == out.end()) out.push_back(*stat);
  }
  return out;
}

void parse_group_by(std::string_view text, ReportOptions& options) {
  options.by_object = false;
  options.by_measure = false;
  for (auto item : split_list(text)) {
    if (item == "object") {
      options.by_object = true;
    } else if (item == "measure") {
      options.by_measure = true;
    } else {
      throw ConfigError("cannot group by '" + std::string(item) + "'");
    }
  }
}

namespace {

struct Group {
  std::string object;
  std::string measure;
  Unit unit;
  std::vector<Rational> values;  // in `unit`
};

}  // namespace

std::string summarize_measures(std::string_view table_csv, const ReportOptions& options, const UnitTable& units) {
  std::string out;
  if (options.by_object) out += "Object,";
  if (options.by_measure) out += "Measure,";
  out += "Unit";
  for (auto s : options.stats) out += "," + std::string(to_string(s));
  out += '\n';

  auto lines = csv::split_lines(table_csv);
  if (lines.empty()) return out;

  std::size_t offset = 0;
  std::string plain(kTableHeader);
  if (lines.front().text == plain) {
    offset = 0;
  } else if (lines.front().text == "Scope,Process ID," + plain) {
    offset = 2;
  } else {
    throw SchemaError("expected measure table header '" + plain + "'");
  }

  std::vector<Group> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  // Full tables repeat a subprocess's instances under every enclosing scope.
  std::set<std::vector<std::string>> seen;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.text.empty()) continue;
    auto fields = csv::split_fields(line.text);
    if (!fields) throw RowError(line.number, "", "malformed quoting");
    if (fields->size() != offset + 7) throw RowError(line.number, "", "expected " + std::to_string(offset + 7) + " fields");
    const auto& object = (*fields)[offset + 2];
    const auto& text = (*fields)[offset + 3];
    const auto& value_text = (*fields)[offset + 4];
    if (offset != 0 && !seen.insert({(*fields)[1], (*fields)[offset + 1], object, text}).second) continue;

    MeasureAnnotation annotation;
    try {
      annotation = parse_measure(text, units);
    } catch (const Error& e) {
      throw RowError(line.number, "Measure Declaration Unit", e.what());
    }
    auto value = parse_value(value_text, annotation.unit);
    if (!value) throw RowError(line.number, "Value", "'" + value_text + "' is not a " + annotation.unit.symbol + " value");

    auto key = std::make_pair(options.by_object ? object : std::string(),
                              options.by_measure ? annotation.name : std::string());
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      groups.push_back({key.first, key.second, annotation.unit, {}});
    }
    auto& g = groups[it->second];
    if (value->dimension() != g.unit.dimension) {
      std::string where = (g.object.empty() ? "" : g.object + "/") + g.measure;
      throw DimensionMismatch(where.empty() ? "all rows" : where, std::string(to_string(value->dimension())),
                              std::string(to_string(g.unit.dimension)));
    }
    g.values.push_back(convert(*value, g.unit).value);
  }

  for (const auto& g : groups) {
    std::vector<std::string> fields;
    if (options.by_object) fields.push_back(g.object);
    if (options.by_measure) fields.push_back(g.measure);
    fields.push_back(g.unit.symbol);
    for (auto s : options.stats) {
      switch (s) {
        case Stat::Min:
          fields.push_back(format_value({*std::min_element(g.values.begin(), g.values.end()), g.unit}));
          break;
        case Stat::Max:
          fields.push_back(format_value({*std::max_element(g.values.begin(), g.values.end()), g.unit}));
          break;
        case Stat::Mean: {
          Rational sum;
          for (const auto& v : g.values) sum += v;
          fields.push_back(format_value({sum / static_cast<std::int64_t>(g.values.size()), g.unit}));
          break;
        }
        case Stat::Count:
          fields.push_back(std::to_string(g.values.size()));
          break;
      }
    }
    out += csv::join(fields);
    out += '\n';
  }
  return out;
}

}  // namespace bpm
