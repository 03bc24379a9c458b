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

#include "bpmeasure/units.hpp"

#include <algorithm>
#include <cctype>

#include "bpmeasure/error.hpp"
#include "bpmeasure/time_format.hpp"

namespace bpm {

std::string_view to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::TimePoint: return "TimePoint";
    case Dimension::Duration: return "Duration";
    case Dimension::Currency: return "Currency";
    case Dimension::CurrencyPerDuration: return "CurrencyPerDuration";
    case Dimension::Count: return "Count";
    case Dimension::Dimensionless: return "Dimensionless";
  }
  return "Dimensionless";
}

std::optional<Dimension> parse_dimension(std::string_view text) {
  for (Dimension d : {Dimension::TimePoint, Dimension::Duration, Dimension::Currency,
                      Dimension::CurrencyPerDuration, Dimension::Count, Dimension::Dimensionless}) {
    if (to_string(d) == text) return d;
  }
  return std::nullopt;
}

UnitTable UnitTable::defaults() {
  UnitTable table;
  table.put({"s", Dimension::Duration, Rational(1)});
  table.put({"min", Dimension::Duration, Rational(60)});
  table.put({"hour", Dimension::Duration, Rational(3600)});
  table.put({"datetime", Dimension::TimePoint, Rational(1)});
  table.put({"EUR", Dimension::Currency, Rational(1)});
  table.put({"EUR/s", Dimension::CurrencyPerDuration, Rational(1)});
  table.put({"EUR/min", Dimension::CurrencyPerDuration, Rational(1, 60)});
  table.put({"EUR/hour", Dimension::CurrencyPerDuration, Rational(1, 3600)});
  table.put({"count", Dimension::Count, Rational(1)});
  table.put({"ratio", Dimension::Dimensionless, Rational(1)});
  return table;
}

void UnitTable::put(Unit unit) {
  if (unit.symbol.empty()) throw Error("unit symbol must not be empty");
  if (unit.scale.sign() <= 0) throw Error("unit '" + unit.symbol + "' must have a positive scale");
  for (auto& existing : units_) {
    if (existing.symbol == unit.symbol) {
      existing = std::move(unit);
      return;
    }
  }
  units_.push_back(std::move(unit));
}

const Unit* UnitTable::find(std::string_view symbol) const {
  for (const auto& u : units_) {
    if (u.symbol == symbol) return &u;
  }
  return nullptr;
}

const Unit& UnitTable::at(std::string_view symbol) const {
  if (const Unit* u = find(symbol)) return *u;
  throw UnknownUnit(std::string(symbol));
}

const Unit& UnitTable::base(Dimension dimension) const {
  for (const auto& u : units_) {
    if (u.dimension == dimension && u.scale == Rational(1)) return u;
  }
  throw UnknownUnit("<base unit for " + std::string(to_string(dimension)) + ">");
}

const Unit* UnitTable::match_prefix(std::string_view text) const {
  const Unit* best = nullptr;
  for (const auto& u : units_) {
    if (text.size() < u.symbol.size() || text.compare(0, u.symbol.size(), u.symbol) != 0) continue;
    if (text.size() > u.symbol.size()) {
      auto next = static_cast<unsigned char>(text[u.symbol.size()]);
      if (std::isalnum(next) || next == '_' || next >= 0x80) continue;
    }
    if (!best || u.symbol.size() > best->symbol.size()) best = &u;
  }
  return best;
}

Quantity convert(const Quantity& quantity, const Unit& target) {
  if (quantity.unit.dimension != target.dimension) {
    throw DimensionMismatch("convert", std::string(to_string(quantity.unit.dimension)),
                            std::string(to_string(target.dimension)));
  }
  return Quantity{quantity.value * quantity.unit.scale / target.scale, target};
}

Quantity from_base(const Rational& base_value, const Unit& unit) {
  return Quantity{base_value / unit.scale, unit};
}

std::string format_value(const Quantity& q) {
  switch (q.unit.dimension) {
    case Dimension::Duration:
      return timefmt::format_clock(q.base_value().round_to_integer());
    case Dimension::TimePoint:
      return timefmt::format_timepoint(q.base_value().round_to_integer());
    case Dimension::Currency:
      return q.value.to_fixed(2);
    case Dimension::CurrencyPerDuration:
    case Dimension::Count:
    case Dimension::Dimensionless:
      return q.value.to_string();
  }
  return q.value.to_string();
}

std::optional<Quantity> parse_value(std::string_view text, const Unit& unit, std::int64_t reference_day_start) {
  switch (unit.dimension) {
    case Dimension::Duration: {
      auto secs = timefmt::parse_clock(text);
      if (!secs) return std::nullopt;
      return from_base(Rational(*secs), unit);
    }
    case Dimension::TimePoint: {
      auto secs = timefmt::parse_timepoint(text, reference_day_start);
      if (!secs) return std::nullopt;
      return from_base(Rational(*secs), unit);
    }
    default: {
      auto r = Rational::parse(text);
      if (!r) return std::nullopt;
      return Quantity{*r, unit};
    }
  }
}

}  // namespace bpm
