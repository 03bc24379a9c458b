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

#include "bpmeasure/rational.hpp"

namespace bpm {

enum class Dimension { TimePoint, Duration, Currency, CurrencyPerDuration, Count, Dimensionless };

std::string_view to_string(Dimension dimension);
std::optional<Dimension> parse_dimension(std::string_view text);

// A named unit. `scale` converts one of this unit into the dimension's base
// unit (s for durations, EUR for money, EUR/s for rates).
struct Unit {
  std::string symbol;
  Dimension dimension = Dimension::Dimensionless;
  Rational scale{1};

  bool operator==(const Unit&) const = default;
};

class UnitTable {
 public:
  // Seeded with s, min, hour, datetime, EUR, EUR/s, EUR/min, EUR/hour, count, ratio.
  static UnitTable defaults();

  // Adds or replaces a unit. Throws Error if scale <= 0 or the symbol is empty.
  void put(Unit unit);

  const Unit* find(std::string_view symbol) const;
  // Throws UnknownUnit.
  const Unit& at(std::string_view symbol) const;
  // The scale-1 unit for a dimension.
  const Unit& base(Dimension dimension) const;

  // Longest unit symbol that prefixes `text` and ends at a word boundary.
  const Unit* match_prefix(std::string_view text) const;

  const std::vector<Unit>& units() const { return units_; }

  bool operator==(const UnitTable&) const = default;

 private:
  std::vector<Unit> units_;
};

// A value expressed in `unit`. Duration and TimePoint values are seconds
// multiplied by the unit scale; money is exact, never binary floating point.
struct Quantity {
  Rational value;
  Unit unit;

  Rational base_value() const { return value * unit.scale; }
  Dimension dimension() const { return unit.dimension; }

  bool operator==(const Quantity&) const = default;
};

// Exact rescale. Throws DimensionMismatch when dimensions differ.
Quantity convert(const Quantity& quantity, const Unit& target);

// Builds a quantity from a value in base units.
Quantity from_base(const Rational& base_value, const Unit& unit);

// Value text used by tables: H:MM:SS for durations (rounded to seconds),
// clock or ISO for time points, two decimals for money, plain decimals or
// fractions otherwise.
std::string format_value(const Quantity& quantity);

// Inverse of format_value for a known unit. Returns nullopt on malformed text.
std::optional<Quantity> parse_value(std::string_view text, const Unit& unit, std::int64_t reference_day_start = 0);

}  // namespace bpm
