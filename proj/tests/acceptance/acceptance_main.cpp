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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bpmeasure/error.hpp"
#include "bpmeasure/evaluator.hpp"
#include "bpmeasure/measure_expr.hpp"
#include "bpmeasure/model_text.hpp"
#include "bpmeasure/simulator.hpp"
#include "support/fixtures.hpp"
#include "support/model_gen.hpp"
#include "support/oracles.hpp"

namespace {

using namespace bpm;

// Pinned limits.
constexpr double kGoldenRuntimeLimitSeconds = 1.0;
constexpr int kRatePairs = 1000;
constexpr int kSimulatorReplays = 1000;
constexpr int kRandomModels = 200;
constexpr int kFuzzInputs = 100000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::int64_t hms(int h, int m, int s) { return h * 3600 + m * 60 + s; }

// --- 1 ---------------------------------------------------------------------

struct GoldenRow {
  const char* object_type;
  const char* object;
  const char* measure;
  Rational value;       // base units: seconds or EUR
  std::vector<int> sources;
};

Outcome golden_table() {
  Outcome o;
  const std::vector<GoldenRow> rows = {
      {"Business Process", "Make Order", "Start Time", hms(9, 5, 34), {}},
      {"Task", "Check Order", "Processing Time", hms(0, 3, 0), {}},
      {"Task", "Check Order", "Cost", Rational(10, 100), {2}},
      {"Task", "Send to Production", "Processing Time", hms(0, 2, 0), {}},
      {"Task", "Send to Production", "Cost", Rational(10, 100), {}},
      {"Business Process", "Make Order", "End Time", hms(9, 15, 47), {}},
      {"Business Process", "Make Order", "Processing Time", hms(0, 5, 0), {2, 4}},
      {"Business Process", "Make Order", "Total Time", hms(0, 10, 13), {1, 6}},
      {"Business Process", "Make Order", "Cost", Rational(20, 100), {3, 5}},
  };

  auto t0 = std::chrono::steady_clock::now();
  auto model = parse_model(test::read_fixture("pizza.bpm"));
  auto log = parse_log(test::read_fixture("pizza_runtime_log.csv"));
  auto result = evaluate_instance(model, log, default_registry(), "Make Order", "00101");
  auto table = render_table(result);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (result.instances.size() != rows.size()) {
    o.fail("expected 9 instances, got " + std::to_string(result.instances.size()));
    return o;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& got = result.instances[i];
    const auto& want = rows[i];
    std::string at = "row " + std::to_string(i + 1) + ": ";
    if (got.no != static_cast<int>(i + 1)) o.fail(at + "numbering");
    if (to_string(got.object_type) != want.object_type || got.object != want.object || got.measure != want.measure)
      o.fail(at + "object/measure " + got.object + " " + got.measure);
    if (got.value.base_value() != want.value)
      o.fail(at + "value " + got.value.base_value().to_string() + " != " + want.value.to_string());
    if (got.sources != want.sources) o.fail(at + "source list");
    for (int s : got.sources) {
      if (got.time < result.instances[static_cast<std::size_t>(s - 1)].time) o.fail(at + "time precedes a source");
    }
  }
  if (table != test::read_fixture("make_order_00101_measures.csv")) o.fail("rendered table differs from golden CSV");
  if (seconds >= kGoldenRuntimeLimitSeconds) o.fail("runtime " + std::to_string(seconds) + " s");
  if (o.pass) {
    std::ostringstream d;
    d << "9 instances exact, sources {2,4} {1,6} {3,5}, times monotone, " << seconds * 1000 << " ms";
    o.detail = d.str();
  }
  return o;
}

// --- 2 ---------------------------------------------------------------------

Outcome unit_arithmetic() {
  Outcome o;
  using Oracle = boost::multiprecision::cpp_rational;
  const auto& units = UnitTable::defaults();
  auto check_cost = parse_measure("Cost=2 EUR/hour*Processing Time, EUR");
  auto bind = [](Quantity pt) {
    return [pt](const RefExpr&) -> std::optional<std::vector<Quantity>> { return std::vector<Quantity>{pt}; };
  };
  auto cost = eval_expr(*check_cost.decl, bind({Rational(3), units.at("min")}));
  if (cost.base_value() != Rational(1, 10) || cost.dimension() != Dimension::Currency || format_value(cost) != "0.10")
    o.fail("2 EUR/hour x 0:03:00 gave " + cost.base_value().to_string());

  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::int64_t> cents(0, 1'000'000);
  std::uniform_int_distribution<std::int64_t> secs(0, 7 * 86400);
  const char* rate_units[] = {"EUR/hour", "EUR/min", "EUR/s"};
  const char* dur_units[] = {"s", "min", "hour"};
  int deviations = 0;
  for (int i = 0; i < kRatePairs; ++i) {
    const Unit& ru = units.at(rate_units[i % 3]);
    const Unit& du = units.at(dur_units[(i / 3) % 3]);
    Rational rate(cents(rng), 100);
    Rational dur(secs(rng), 60);
    auto expr = make_binary(BinaryOp::Mul, make_const({rate, ru}), make_ref("Processing Time"));
    auto got = eval_expr(*expr, bind({dur, du}));
    Oracle expected = Oracle(rate.num(), rate.den()) * Oracle(ru.scale.num(), ru.scale.den()) *
                      Oracle(dur.num(), dur.den()) * Oracle(du.scale.num(), du.scale.den());
    if (Oracle(got.base_value().num(), got.base_value().den()) != expected) ++deviations;
  }
  if (deviations != 0) o.fail(std::to_string(deviations) + " of " + std::to_string(kRatePairs) + " pairs deviate");
  if (o.pass) o.detail = "0.10 EUR exact; " + std::to_string(kRatePairs) + " random pairs, zero deviation";
  return o;
}

// --- 3 ---------------------------------------------------------------------

Outcome loop_folding() {
  Outcome o;
  const auto& log = test::runtime_log();

  // Hand fold: unique rows of Check Order in 00102, processing times summed.
  std::set<std::vector<std::string>> seen;
  std::int64_t hand_pt = 0;
  int hand_count = 0;
  std::vector<std::int64_t> hand_rows;
  for (const auto& r : log.records) {
    if (r.object != "Check Order" || r.process_id != "00102") continue;
    std::vector<std::string> key{r.object, r.process_id, std::to_string(r.start.value_or(-1)),
                                 std::to_string(r.end.value_or(-1)), std::to_string(r.processing_time.value_or(-1)),
                                 r.performer.value_or("")};
    if (!seen.insert(key).second) continue;
    hand_pt += *r.processing_time;
    ++hand_count;
    hand_rows.push_back(r.no);
  }
  if (hand_pt != hms(0, 2, 25) || hand_count != 2) o.fail("hand fold disagrees with the published log");

  auto result = evaluate_instance(test::pizza_model(), log, default_registry(), "Make Order", "00102");
  const MeasureInstance* pt = nullptr;
  for (const auto& m : result.instances) {
    if (m.object == "Check Order" && m.measure == "Processing Time") pt = &m;
  }
  if (pt == nullptr) {
    o.fail("no Check Order Processing Time in 00102");
    return o;
  }
  if (pt->value.base_value() != Rational(hand_pt)) o.fail("evaluated " + format_value(pt->value));
  if (pt->log_rows != hand_rows || hand_rows != std::vector<std::int64_t>{10029, 10035}) o.fail("contributing rows");

  std::vector<LogRecord> rows;
  for (const auto& r : log.records) {
    if (r.object == "Check Order" && r.process_id == "00102") rows.push_back(r);
  }
  if (fold_occurrences(rows).count != hand_count) o.fail("execution count");

  bool flagged = false;
  for (const auto& d : validate_log(log, test::pizza_model(), true)) {
    if (d.rule == "DUPLICATE_ROW" && d.location == "row 10038") flagged = true;
  }
  if (!flagged) o.fail("row 10038 not flagged as duplicate");
  if (o.pass) o.detail = "0:02:25 from rows 10029+10035, count 2, 10038 flagged duplicate";
  return o;
}

// --- 4 ---------------------------------------------------------------------

ProcessModel single_task(const std::string& task_measure, const std::string& process_measure) {
  std::string text = "process \"P\" {\n  lane \"L\" {\n    start \"Start\"\n    task \"A\" { measure \"" +
                     task_measure + "\" }\n    finish \"Finish\"\n  }\n";
  if (!process_measure.empty()) text += "  measure \"" + process_measure + "\"\n";
  text += "  flow \"Start\" -> \"A\"\n  flow \"A\" -> \"Finish\"\n}\n";
  return parse_model(text);
}

Outcome graph_validation() {
  Outcome o;
  struct Case {
    std::string name;
    ProcessModel model;
    std::string rule;
    std::string location;
  };
  std::vector<Case> cases = {
      {"self reference", single_task("Cost=2*Cost, EUR", ""), "CYCLE", "P/A/Cost"},
      {"Total Time on a task", single_task("Total Time, min", ""), "ATTACHMENT", "P/A/Total Time"},
      {"EUR + min", single_task("Cost=1 EUR + 3 min, EUR", ""), "DIMENSION_MISMATCH", "P/A/Cost"},
  };
  std::vector<std::string> seen;
  for (auto& c : cases) {
    auto diags = check_measures(c.model, default_registry());
    const Diagnostic* hit = nullptr;
    for (const auto& d : diags) {
      if (d.rule == c.rule) hit = &d;
    }
    if (hit == nullptr) {
      o.fail(c.name + ": no " + c.rule);
      continue;
    }
    if (hit->severity != Severity::Error || hit->location != c.location) o.fail(c.name + ": location " + hit->location);
    seen.push_back(format_line(*hit));
    try {
      build_measure_graph(c.model, default_registry());
      o.fail(c.name + ": graph built");
    } catch (const DiagnosticError&) {
    }
  }
  if (std::set<std::string>(seen.begin(), seen.end()).size() != cases.size()) o.fail("diagnostics not distinct");
  if (o.pass) o.detail = "CYCLE, ATTACHMENT, DIMENSION_MISMATCH with locations";
  return o;
}

// --- 5 ---------------------------------------------------------------------

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Outcome simulator_properties() {
  Outcome o;
  const auto& model = test::pizza_model();
  auto graph = build_measure_graph(model, default_registry());
  long instances_checked = 0;
  for (int i = 0; i < kSimulatorReplays && o.pass; ++i) {
    SimConfig config;
    config.seed = mix(static_cast<std::uint64_t>(i));
    config.runs = 1 + i % 5;
    config.start_epoch = hms(9, 0, 0);
    config.arrival = i % 2 == 0 ? Arrival{Arrival::Kind::Fixed, 60 * (5 + i % 40)}
                                : Arrival{Arrival::Kind::Exponential, 60 * (5 + i % 40)};
    std::string at = "replay " + std::to_string(i) + " (seed " + std::to_string(config.seed) + "): ";
    auto a = simulate_detailed(model, config);
    auto b = simulate_detailed(model, config);
    if (render_log(a.log) != render_log(b.log)) o.fail(at + "logs differ for the same seed");
    if (auto v = test::capacity_violations(model, a.log); !v.empty()) o.fail(at + v.front());
    if (auto v = test::resource_trace_violations(model, a.trace); !v.empty()) o.fail(at + v.front());
    for (const auto& d : validate_log(a.log, model, true)) {
      if (d.severity == Severity::Error) o.fail(at + format_line(d));
    }
    auto table = evaluate_all(graph, model, a.log);
    if (has_errors(table.diagnostics)) o.fail(at + "evaluation diagnostics");
    for (const auto& r : table.results) {
      if (has_errors(r.diagnostics)) o.fail(at + r.scope + "@" + r.process_id + " failed");
      for (const auto& m : r.instances) {
        if (m.object != r.scope || m.measure != "Processing Time") continue;
        auto expected = test::brute_force_processing_time(model, a.log, r.scope, r.process_id);
        if (!expected || m.value.base_value() != Rational(*expected))
          o.fail(at + r.scope + "@" + r.process_id + " processing time differs from brute force");
        ++instances_checked;
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(kSimulatorReplays) + " replays, " + std::to_string(instances_checked) +
               " container totals equal to brute force";
  return o;
}

// --- 6 ---------------------------------------------------------------------

Outcome round_trips() {
  Outcome o;
  auto fixed_point = [&](const ProcessModel& m, const std::string& what) {
    auto text = serialize_model(m);
    auto again = parse_model(text);
    if (!(again == m)) o.fail(what + ": parse(serialize(m)) != m");
    if (serialize_model(again) != text) o.fail(what + ": serialization not stable");
  };
  fixed_point(test::pizza_model(), "pizza.bpm");
  std::mt19937_64 rng(6);
  for (int i = 0; i < kRandomModels; ++i) {
    auto m = test::random_model(rng);
    if (has_errors(validate_model(m))) o.fail("random model " + std::to_string(i) + " invalid");
    fixed_point(m, "random model " + std::to_string(i));
  }
  auto text = test::read_fixture("pizza_runtime_log.csv");
  if (render_log(parse_log(text)) != text) o.fail("runtime log fixture does not re-render byte-identically");
  SimConfig config;
  config.runs = 20;
  config.seed = 6;
  auto sim = simulate(test::pizza_model(), config);
  if (!(parse_log(render_log(sim)) == sim)) o.fail("simulated log does not round-trip");
  if (o.pass) o.detail = "fixture + " + std::to_string(kRandomModels) + " random models fixed point; logs lossless";
  return o;
}

// --- 7 ---------------------------------------------------------------------

std::string mutate(std::mt19937_64& rng, std::string s) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n)(rng); };
  int edits = 1 + static_cast<int>(pick(7));
  for (int e = 0; e < edits; ++e) {
    std::size_t pos = s.empty() ? 0 : pick(s.size() - 1);
    switch (pick(4)) {
      case 0:
        if (!s.empty()) s[pos] = static_cast<char>(pick(255));
        break;
      case 1:
        s.insert(pos, 1, static_cast<char>(pick(255)));
        break;
      case 2:
        if (!s.empty()) s.erase(pos, 1 + pick(15));
        break;
      case 3: {
        static const char* tokens[] = {"{", "}", "\"", "\\", "->", ",", "x 99999999999999999999", "9:99:99",
                                       "measure \"", "=", "(", ")", "\n", "\r", "p=2", "every 0:00:00"};
        s.insert(pos, tokens[pick(15)]);
        break;
      }
      default:
        if (!s.empty()) s = s.substr(0, pos);
    }
  }
  return s;
}

Outcome fuzz() {
  Outcome o;
  std::mt19937_64 rng(7);
  const std::string seeds[] = {test::read_fixture("pizza.bpm"), test::read_fixture("pizza_runtime_log.csv")};
  long structured = 0;
  for (int i = 0; i < kFuzzInputs && o.pass; ++i) {
    std::string input;
    if (i % 4 == 0) {
      std::uniform_int_distribution<int> len(0, 512);
      std::uniform_int_distribution<int> byte(0, 255);
      for (int k = len(rng); k > 0; --k) input.push_back(static_cast<char>(byte(rng)));
    } else {
      input = mutate(rng, seeds[i % 2]);
    }
    for (int target = 0; target < 2; ++target) {
      try {
        if (target == 0) {
          auto m = parse_model(input);
          (void)validate_model(m);
        } else {
          (void)parse_log(input);
        }
      } catch (const bpm::Error&) {
        ++structured;
      } catch (const std::exception& e) {
        o.fail("input " + std::to_string(i) + ": unstructured " + e.what());
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(kFuzzInputs) + " inputs x 2 parsers, " + std::to_string(structured) +
               " structured errors, no other failures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"golden measure table", golden_table},   {"unit arithmetic", unit_arithmetic},
      {"loop folding", loop_folding},           {"graph validation", graph_validation},
      {"simulator properties", simulator_properties}, {"round trips", round_trips},
      {"parser fuzz", fuzz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
