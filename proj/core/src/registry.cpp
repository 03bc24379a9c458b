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

#include "bpmeasure/registry.hpp"

#include <algorithm>
#include <set>

#include "bpmeasure/error.hpp"

namespace bpm {

std::string_view to_string(MeasureGroup group) {
  switch (group) {
    case MeasureGroup::Time: return "Time";
    case MeasureGroup::Money: return "Money";
    case MeasureGroup::Resource: return "Resource";
    case MeasureGroup::Work: return "Work";
    case MeasureGroup::Quality: return "Quality";
  }
  return "Time";
}

std::optional<MeasureGroup> parse_measure_group(std::string_view text) {
  for (auto g : {MeasureGroup::Time, MeasureGroup::Money, MeasureGroup::Resource, MeasureGroup::Work,
                 MeasureGroup::Quality}) {
    if (to_string(g) == text) return g;
  }
  return std::nullopt;
}

std::string_view to_string(LogSource source) {
  switch (source) {
    case LogSource::StartTime: return "StartTime";
    case LogSource::EndTime: return "EndTime";
    case LogSource::ProcessingTime: return "ProcessingTime";
    case LogSource::Occurrence: return "Occurrence";
  }
  return "StartTime";
}

std::optional<LogSource> parse_log_source(std::string_view text) {
  for (auto s : {LogSource::StartTime, LogSource::EndTime, LogSource::ProcessingTime, LogSource::Occurrence}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

Dimension dimension_of(LogSource source) {
  switch (source) {
    case LogSource::StartTime:
    case LogSource::EndTime: return Dimension::TimePoint;
    case LogSource::ProcessingTime: return Dimension::Duration;
    case LogSource::Occurrence: return Dimension::Count;
  }
  return Dimension::Count;
}

bool MeasureKind::attaches(ElementKind kind) const {
  if (kind == ElementKind::SubprocessCall) kind = ElementKind::BusinessProcess;
  return std::find(attaches_to.begin(), attaches_to.end(), kind) != attaches_to.end();
}

bool MeasureKind::operator==(const MeasureKind& other) const {
  return name == other.name && group == other.group && dimension == other.dimension &&
         default_unit == other.default_unit && attaches_to == other.attaches_to &&
         primitive_source == other.primitive_source && equal(container_implicit, other.container_implicit);
}

const MeasureKind* Registry::find(std::string_view name) const {
  for (const auto& k : kinds) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

const MeasureKind& Registry::at(std::string_view name) const {
  if (const MeasureKind* k = find(name)) return *k;
  throw UnknownMeasure(std::string(name));
}

namespace {

std::vector<ElementKind> kinds_of(std::initializer_list<ElementKind> list) {
  std::vector<ElementKind> v(list);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Registry build_default() {
  Registry r;
  const auto task = ElementKind::Task;
  const auto decision = ElementKind::Decision;
  const auto process = ElementKind::BusinessProcess;
  r.kinds.push_back({"Start Time", MeasureGroup::Time, Dimension::TimePoint, "datetime",
                     kinds_of({task, decision, process}), LogSource::StartTime, nullptr});
  r.kinds.push_back({"End Time", MeasureGroup::Time, Dimension::TimePoint, "datetime",
                     kinds_of({task, decision, process}), LogSource::EndTime, nullptr});
  r.kinds.push_back({"Processing Time", MeasureGroup::Time, Dimension::Duration, "min", kinds_of({task, process}),
                     LogSource::ProcessingTime, parse_expression("Sum(children.Processing Time)", r.units)});
  r.kinds.push_back({"Total Time", MeasureGroup::Time, Dimension::Duration, "min", kinds_of({process}), std::nullopt,
                     parse_expression("Minus(End Time, Start Time)", r.units)});
  r.kinds.push_back({"Cost", MeasureGroup::Money, Dimension::Currency, "EUR", kinds_of({task, process}), std::nullopt,
                     parse_expression("Sum(children.Cost)", r.units)});
  r.kinds.push_back({"Execution Count", MeasureGroup::Work, Dimension::Count, "count",
                     kinds_of({task, decision, process}), LogSource::Occurrence, nullptr});
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) return out;
    start = p + 1;
  }
}

int column_of(std::string_view line, std::string_view part) {
  return static_cast<int>(part.data() - line.data()) + 1;
}

}  // namespace

const Registry& default_registry() {
  static const Registry registry = build_default();
  return registry;
}

std::optional<Diagnostic> check_attachment(const Registry& registry, std::string_view measure_name, ElementKind kind) {
  const MeasureKind* k = registry.find(measure_name);
  if (!k) return make_error("UNKNOWN_MEASURE", std::string(measure_name), "no measure kind with this name in the registry");
  if (!k->attaches(kind)) {
    return make_error("ATTACHMENT", std::string(measure_name),
                      "measure cannot be attached to a " + std::string(to_string(kind)));
  }
  return std::nullopt;
}

ExprPtr implicit_declaration(const Registry& registry, std::string_view measure_name, Structure structure) {
  const MeasureKind& k = registry.at(measure_name);
  if (structure == Structure::Container) return k.container_implicit;
  return nullptr;
}

std::vector<Diagnostic> validate_registry(const Registry& registry) {
  std::vector<Diagnostic> out;
  std::set<std::string> names;
  for (const auto& k : registry.kinds) {
    if (!names.insert(k.name).second) out.push_back(make_error("REGISTRY_DUPLICATE_KIND", k.name, "kind defined twice"));
    const Unit* u = registry.units.find(k.default_unit);
    if (!u) {
      out.push_back(make_error("REGISTRY_UNIT", k.name, "unknown default unit '" + k.default_unit + "'"));
    } else if (u->dimension != k.dimension) {
      out.push_back(make_error("REGISTRY_UNIT", k.name,
                               "default unit '" + k.default_unit + "' is " + std::string(to_string(u->dimension))));
    }
    if (k.attaches_to.empty()) out.push_back(make_error("REGISTRY_ATTACHES", k.name, "attaches to nothing"));
    if (k.primitive_source && dimension_of(*k.primitive_source) != k.dimension) {
      out.push_back(make_error("REGISTRY_SOURCE", k.name,
                               "log column " + std::string(to_string(*k.primitive_source)) + " is not " +
                                   std::string(to_string(k.dimension))));
    }
    if (k.container_implicit) {
      DimensionResolver resolve = [&](const RefExpr& ref) -> std::optional<Dimension> {
        if (const MeasureKind* other = registry.find(ref.measure)) return other->dimension;
        return std::nullopt;
      };
      try {
        Dimension d = typecheck(*k.container_implicit, resolve);
        if (d != k.dimension) {
          out.push_back(make_error("REGISTRY_DIMENSION", k.name,
                                   "implicit declaration is " + std::string(to_string(d)) + ", kind is " +
                                       std::string(to_string(k.dimension))));
        }
      } catch (const DimensionMismatch& e) {
        out.push_back(make_error("REGISTRY_DIMENSION", k.name, e.what()));
      } catch (const UnresolvedRef& e) {
        out.push_back(make_error("REGISTRY_UNRESOLVED", k.name, e.what()));
      }
    }
  }
  return out;
}

Registry load_registry(std::string_view text, const Registry& base) {
  Registry result;
  result.units = base.units;
  bool have_header = false;
  std::set<std::string> defined;
  std::vector<Diagnostic> problems;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_header) {
      if (line == "extend") {
        result.kinds = base.kinds;
      } else if (line != "replace") {
        throw SyntaxError(line_no, column_of(raw, line), "'extend' or 'replace'", "'" + std::string(line) + "'");
      }
      have_header = true;
      continue;
    }

    if (line.substr(0, 5) == "@unit") {
      auto fields = split(trim(line.substr(5)), '|');
      if (fields.size() != 3) throw SyntaxError(line_no, column_of(raw, line), "@unit SYMBOL | DIMENSION | SCALE");
      auto dim = parse_dimension(fields[1]);
      if (!dim) throw SyntaxError(line_no, column_of(raw, fields[1]), "dimension", "'" + std::string(fields[1]) + "'");
      auto scale = Rational::parse(fields[2]);
      if (!scale || scale->sign() <= 0 || fields[0].empty())
        throw SyntaxError(line_no, column_of(raw, fields[2]), "positive scale", "'" + std::string(fields[2]) + "'");
      result.units.put({std::string(fields[0]), *dim, *scale});
      continue;
    }

    auto fields = split(line, '|');
    if (fields.size() != 6) {
      throw SyntaxError(line_no, column_of(raw, line), "6 fields: name | group | dimension | unit | attaches | source-or-implicit",
                        std::to_string(fields.size()) + " fields");
    }
    MeasureKind k;
    k.name = std::string(fields[0]);
    if (k.name.empty()) throw SyntaxError(line_no, column_of(raw, fields[0]), "measure name");
    auto group = parse_measure_group(fields[1]);
    if (!group) throw SyntaxError(line_no, column_of(raw, fields[1]), "group (Time, Money, Resource, Work, Quality)", "'" + std::string(fields[1]) + "'");
    k.group = *group;
    auto dim = parse_dimension(fields[2]);
    if (!dim) throw SyntaxError(line_no, column_of(raw, fields[2]), "dimension", "'" + std::string(fields[2]) + "'");
    k.dimension = *dim;
    k.default_unit = std::string(fields[3]);
    for (auto a : split(fields[4], ',')) {
      if (a == "any") {
        for (auto e : {ElementKind::Task, ElementKind::Decision, ElementKind::BusinessProcess}) k.attaches_to.push_back(e);
        continue;
      }
      auto ek = parse_element_kind(a);
      if (!ek || *ek == ElementKind::SubprocessCall) {
        throw SyntaxError(line_no, column_of(raw, a), "element kind (task, decision, process, start, finish, datastore, any)",
                          "'" + std::string(a) + "'");
      }
      k.attaches_to.push_back(*ek);
    }
    std::sort(k.attaches_to.begin(), k.attaches_to.end());
    k.attaches_to.erase(std::unique(k.attaches_to.begin(), k.attaches_to.end()), k.attaches_to.end());
    if (fields[5] != "-") {
      for (auto part : split(fields[5], ';')) {
        if (part.substr(0, 7) == "source:") {
          auto src = parse_log_source(trim(part.substr(7)));
          if (!src) throw SyntaxError(line_no, column_of(raw, part), "log column (StartTime, EndTime, ProcessingTime, Occurrence)");
          k.primitive_source = src;
        } else if (part.substr(0, 9) == "implicit:") {
          std::string_view expr = trim(part.substr(9));
          try {
            k.container_implicit = parse_expression(expr, result.units);
          } catch (const SyntaxError& e) {
            throw SyntaxError(line_no, column_of(raw, expr) + e.column() - 1, e.expected());
          }
        } else {
          throw SyntaxError(line_no, column_of(raw, part), "'source:COLUMN', 'implicit:EXPR' or '-'");
        }
      }
    }

    if (!defined.insert(k.name).second) {
      Diagnostic d = make_error("REGISTRY_DUPLICATE_KIND", k.name, "kind defined twice in the registry file");
      d.line = line_no;
      d.column = 1;
      problems.push_back(d);
      continue;
    }
    auto existing = std::find_if(result.kinds.begin(), result.kinds.end(), [&](const MeasureKind& m) { return m.name == k.name; });
    if (existing != result.kinds.end()) {
      *existing = std::move(k);
    } else {
      result.kinds.push_back(std::move(k));
    }
  }
  if (!have_header) throw SyntaxError(line_no > 0 ? line_no : 1, 1, "'extend' or 'replace'", "end of input");

  for (auto& d : validate_registry(result)) problems.push_back(std::move(d));
  if (!problems.empty()) throw DiagnosticError("invalid registry", std::move(problems));
  return result;
}

std::string serialize_registry(const Registry& registry) {
  std::string out = "replace\n";
  const UnitTable defaults = UnitTable::defaults();
  for (const auto& u : registry.units.units()) {
    const Unit* d = defaults.find(u.symbol);
    if (d && *d == u) continue;
    out += "@unit " + u.symbol + " | " + std::string(to_string(u.dimension)) + " | " + u.scale.to_string() + "\n";
  }
  for (const auto& k : registry.kinds) {
    out += k.name + " | " + std::string(to_string(k.group)) + " | " + std::string(to_string(k.dimension)) + " | " +
           k.default_unit + " | ";
    for (std::size_t i = 0; i < k.attaches_to.size(); ++i) {
      if (i) out += ", ";
      out += std::string(to_string(k.attaches_to[i]));
    }
    out += " | ";
    std::string tail;
    if (k.primitive_source) tail += "source:" + std::string(to_string(*k.primitive_source));
    if (k.container_implicit) tail += (tail.empty() ? "" : "; ") + std::string("implicit:") + print(*k.container_implicit);
    out += tail.empty() ? "-" : tail;
    out += "\n";
  }
  return out;
}

}  // namespace bpm
