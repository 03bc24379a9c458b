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

#include <string>
#include <string_view>
#include <vector>

#include "bpmeasure/units.hpp"

namespace bpm {

enum class Stat { Min, Max, Mean, Count };

std::string_view to_string(Stat stat);
// Comma-separated list of min, max, mean, count. Throws ConfigError.
std::vector<Stat> parse_stats(std::string_view text);

struct ReportOptions {
  std::vector<Stat> stats{Stat::Min, Stat::Max, Stat::Mean, Stat::Count};
  bool by_object = true;
  bool by_measure = true;
};

// Parses "object", "measure" or "object,measure" into `options`. Throws
// ConfigError.
void parse_group_by(std::string_view text, ReportOptions& options);

// Cross-instance statistics over a measure table (with or without the
// Scope and Process ID columns). Output header is the grouping columns,
// Unit, then one column per statistic; groups in first-appearance order.
// Rows repeated under several scopes for the same Process ID count once.
// Values of one group are converted to the unit of its first row. Throws
// SchemaError, RowError, or DimensionMismatch when a group mixes dimensions.
std::string summarize_measures(std::string_view table_csv, const ReportOptions& options,
                               const UnitTable& units = UnitTable::defaults());

}  // namespace bpm
