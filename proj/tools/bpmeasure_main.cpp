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

// bpmeasure: validate process models, evaluate measures over execution logs,
// simulate logs and summarize measure tables.
//
// Exit status: 0 success, 1 error diagnostics, 2 usage or I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "bpmeasure/diagnostic.hpp"
#include "bpmeasure/error.hpp"
#include "bpmeasure/evaluator.hpp"
#include "bpmeasure/execution_log.hpp"
#include "bpmeasure/model.hpp"
#include "bpmeasure/model_text.hpp"
#include "bpmeasure/registry.hpp"
#include "bpmeasure/report.hpp"
#include "bpmeasure/simulator.hpp"
#include "bpmeasure/time_format.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct IoError {
  std::string message;
};

// Thrown after the offending diagnostics have been recorded.
struct Abort {};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError{"cannot write '" + path + "'"};
}

class Reporter {
 public:
  bool csv = false;

  void add(bpm::Diagnostic d) { diags_.push_back(std::move(d)); }
  void add(const std::vector<bpm::Diagnostic>& ds) { diags_.insert(diags_.end(), ds.begin(), ds.end()); }
  [[noreturn]] void fail(std::string rule, std::string location, std::string message, int line = 0, int column = 0) {
    auto d = bpm::make_error(std::move(rule), std::move(location), std::move(message));
    d.line = line;
    d.column = column;
    add(std::move(d));
    throw Abort{};
  }
  bool errors() const { return bpm::has_errors(diags_); }

  void flush() {
    if (diags_.empty()) return;
    if (csv) std::cerr << bpm::format_csv_header() << '\n';
    for (const auto& d : diags_) std::cerr << (csv ? bpm::format_csv(d) : bpm::format_line(d)) << '\n';
    diags_.clear();
  }

 private:
  std::vector<bpm::Diagnostic> diags_;
};

bpm::ProcessModel load_model(const std::string& path, Reporter& out) {
  std::string text = read_file(path);
  try {
    return bpm::parse_model(text);
  } catch (const bpm::SyntaxError& e) {
    out.fail("SYNTAX", path, e.what(), e.line(), e.column());
  }
}

bpm::Registry load_registry_file(const std::string& flag, Reporter& out) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("BPMEASURE_REGISTRY")) path = env;
  }
  if (path.empty()) return bpm::default_registry();
  std::string text = read_file(path);
  try {
    return bpm::load_registry(text);
  } catch (const bpm::SyntaxError& e) {
    out.fail("REGISTRY_SYNTAX", path, e.what(), e.line(), e.column());
  } catch (const bpm::DiagnosticError& e) {
    out.add(e.diagnostics());
    throw Abort{};
  }
}

bpm::ExecutionLog load_log(const std::string& path, Reporter& out) {
  std::string text = read_file(path);
  try {
    return bpm::parse_log(text);
  } catch (const bpm::SchemaError& e) {
    out.fail("LOG_SCHEMA", path, e.what(), 1);
  } catch (const bpm::RowError& e) {
    out.fail("LOG_ROW", path + ":" + e.column(), e.reason(), e.row());
  }
}

bpm::MeasureGraph load_graph(const bpm::ProcessModel& model, const bpm::Registry& registry, Reporter& out) {
  try {
    return bpm::build_measure_graph(model, registry);
  } catch (const bpm::DiagnosticError& e) {
    out.add(e.diagnostics());
    throw Abort{};
  }
}

struct ValidateArgs {
  std::string model;
  std::string registry;
  std::string log;
  bool strict = false;
};

int cmd_validate(const ValidateArgs& args, Reporter& out) {
  auto model = load_model(args.model, out);
  auto registry = load_registry_file(args.registry, out);
  out.add(bpm::validate_model(model));
  if (!out.errors()) out.add(bpm::check_measures(model, registry));
  if (!args.log.empty()) {
    auto log = load_log(args.log, out);
    out.add(bpm::validate_log(log, model, args.strict));
  }
  return out.errors() ? kDiagnostics : kOk;
}

struct EvalArgs {
  std::string model;
  std::string log;
  std::string out;
  std::string scope;
  std::string instance;
  std::string registry;
};

int cmd_eval(const EvalArgs& args, Reporter& out) {
  auto model = load_model(args.model, out);
  auto registry = load_registry_file(args.registry, out);
  auto model_diags = bpm::validate_model(model);
  out.add(model_diags);
  if (bpm::has_errors(model_diags)) return kDiagnostics;
  auto graph = load_graph(model, registry, out);
  auto log = load_log(args.log, out);
  out.add(bpm::validate_log(log, model, false));

  if (!args.scope.empty() && model.find_process(args.scope) == nullptr) {
    out.fail("UNKNOWN_ELEMENT", args.scope, "no process with this name");
  }

  std::string text;
  if (!args.scope.empty() && !args.instance.empty()) {
    try {
      text = bpm::render_table(bpm::evaluate_instance(graph, model, log, args.scope, args.instance));
    } catch (const bpm::UnknownInstance& e) {
      out.fail("UNKNOWN_INSTANCE", args.scope + "@" + args.instance, e.what());
    } catch (const bpm::Error& e) {
      out.fail("EVALUATION", args.scope + "@" + args.instance, e.what());
    }
  } else {
    auto table = bpm::evaluate_all(graph, model, log);
    bpm::EvaluationTable selected;
    for (auto& r : table.results) {
      if (!args.scope.empty() && r.scope != args.scope) continue;
      if (!args.instance.empty() && r.process_id != args.instance) continue;
      out.add(r.diagnostics);
      selected.results.push_back(std::move(r));
    }
    for (const auto& d : table.diagnostics) {
      if (d.rule == "ORPHAN_INSTANCE") out.add(d);
    }
    if (!args.instance.empty() && selected.results.empty()) {
      out.fail("UNKNOWN_INSTANCE", args.instance, "unknown process instance '" + args.instance + "'");
    }
    text = bpm::render_table(selected);
  }
  write_output(args.out, text);
  return out.errors() ? kDiagnostics : kOk;
}

struct SimulateArgs {
  std::string model;
  int runs = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string arrival = "fixed:0:30:00";
  std::string start_epoch = "9:00:00";
  std::string root;
  std::int64_t base_row = 10001;
};

int cmd_simulate(const SimulateArgs& args, Reporter& out) {
  bpm::SimConfig config;
  try {
    config.arrival = bpm::parse_arrival(args.arrival);
  } catch (const bpm::ConfigError& e) {
    throw IoError{std::string("--arrival: ") + e.what()};
  }
  auto epoch = bpm::timefmt::parse_timepoint(args.start_epoch);
  if (!epoch) throw IoError{"--start-epoch: expected H:MM:SS or YYYY-MM-DDTHH:MM:SS"};
  config.start_epoch = *epoch;
  config.runs = args.runs;
  config.seed = args.seed;
  config.base_row_no = args.base_row;
  if (!args.root.empty()) config.root = args.root;

  auto model = load_model(args.model, out);
  auto model_diags = bpm::validate_model(model);
  out.add(model_diags);
  if (bpm::has_errors(model_diags)) return kDiagnostics;
  auto gaps = bpm::check_sim_annotations(model);
  if (!gaps.empty()) {
    out.add(gaps);
    return kDiagnostics;
  }
  bpm::SimResult result;
  try {
    result = bpm::simulate_detailed(model, config);
  } catch (const bpm::DeadlockError& e) {
    std::string waiting;
    for (const auto& w : e.waiting()) waiting += (waiting.empty() ? "" : "; ") + w;
    out.fail("DEADLOCK", bpm::timefmt::format_timepoint(e.time()), std::string(e.what()) + ": " + waiting);
  } catch (const bpm::ConfigError& e) {
    out.fail("SIM_CONFIG", args.model, e.what());
  }
  out.add(result.diagnostics);
  write_output(args.out, bpm::render_log(result.log));
  return out.errors() ? kDiagnostics : kOk;
}

struct ReportArgs {
  std::string measures;
  std::string stats = "min,max,mean,count";
  std::string group_by = "object,measure";
  std::string out;
};

int cmd_report(const ReportArgs& args, Reporter& out) {
  bpm::ReportOptions options;
  try {
    options.stats = bpm::parse_stats(args.stats);
    bpm::parse_group_by(args.group_by, options);
  } catch (const bpm::ConfigError& e) {
    throw IoError{e.what()};
  }
  std::string text = read_file(args.measures);
  std::string summary;
  try {
    summary = bpm::summarize_measures(text, options);
  } catch (const bpm::DimensionMismatch& e) {
    out.fail("DIMENSION_MISMATCH", e.path(), std::string("group mixes ") + e.found() + " with " + e.expected());
  } catch (const bpm::SchemaError& e) {
    out.fail("TABLE_SCHEMA", args.measures, e.what(), 1);
  } catch (const bpm::RowError& e) {
    out.fail("TABLE_ROW", args.measures, e.what(), e.row());
  }
  write_output(args.out, summary);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Business process measures: validate, evaluate, simulate, report"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Diagnostic format on standard error")
      ->check(CLI::IsMember({"text", "csv"}));

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check a model, its measures and optionally a log");
  v->add_option("--model,model", validate.model, "Model file")->required();
  v->add_option("--registry", validate.registry, "Registry file (default: $BPMEASURE_REGISTRY)");
  v->add_option("--log", validate.log, "Execution log to check against the model");
  v->add_flag("--strict", validate.strict, "Require log objects to exist in the model");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Compute measure values from an execution log");
  e->add_option("--model", eval.model, "Model file")->required();
  e->add_option("--log", eval.log, "Execution log CSV")->required();
  e->add_option("--out", eval.out, "Output CSV (default: standard output)");
  e->add_option("--scope", eval.scope, "Process whose measures are reported");
  e->add_option("--instance", eval.instance, "Process ID");
  e->add_option("--registry", eval.registry, "Registry file (default: $BPMEASURE_REGISTRY)");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Generate an execution log from a model");
  s->add_option("--model", sim.model, "Model file")->required();
  s->add_option("--runs", sim.runs, "Process instances to start")->check(CLI::PositiveNumber);
  s->add_option("--seed", sim.seed, "Random seed");
  s->add_option("--out", sim.out, "Output CSV (default: standard output)");
  s->add_option("--arrival", sim.arrival, "fixed:<duration> or exp:<duration>")->capture_default_str();
  s->add_option("--start-epoch", sim.start_epoch, "First arrival, H:MM:SS or ISO timestamp")->capture_default_str();
  s->add_option("--root", sim.root, "Top-level process to start");
  s->add_option("--base-row", sim.base_row, "Number of the first log row")->check(CLI::PositiveNumber);

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Summarize a measure table across instances");
  r->add_option("--measures", rep.measures, "Measure table CSV from eval")->required();
  r->add_option("--stats", rep.stats, "Statistics: min,max,mean,count")->capture_default_str();
  r->add_option("--group-by", rep.group_by, "object, measure or object,measure")->capture_default_str();
  r->add_option("--out", rep.out, "Output CSV (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }

  Reporter out;
  out.csv = format == "csv";
  int code = kOk;
  try {
    if (*v) code = cmd_validate(validate, out);
    if (*e) code = cmd_eval(eval, out);
    if (*s) code = cmd_simulate(sim, out);
    if (*r) code = cmd_report(rep, out);
  } catch (const Abort&) {
    code = kDiagnostics;
  } catch (const IoError& err) {
    out.flush();
    std::cerr << "error: " << err.message << '\n';
    return kUsage;
  } catch (const bpm::Error& err) {
    out.add(bpm::make_error("INTERNAL", "", err.what()));
    code = kDiagnostics;
  }
  out.flush();
  return code;
}
