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

#include "bpmeasure/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "bpmeasure/error.hpp"
#include "bpmeasure/time_format.hpp"

namespace bpm {

Arrival parse_arrival(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("arrival must be 'fixed:<duration>' or 'exp:<duration>'");
  auto kind = text.substr(0, colon);
  auto seconds = timefmt::parse_duration(text.substr(colon + 1));
  if (!seconds || *seconds <= 0) throw ConfigError("arrival interval must be a positive duration");
  if (kind == "fixed") return {Arrival::Kind::Fixed, *seconds};
  if (kind == "exp") return {Arrival::Kind::Exponential, *seconds};
  throw ConfigError("unknown arrival kind '" + std::string(kind) + "'");
}

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per model path, so adding an element leaves the others
// untouched. Mappings are spelled out to stay identical across standard
// libraries.
class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view key) : gen_(splitmix64(seed ^ fnv1a(key))) {}

  std::int64_t uniform_int(std::int64_t low, std::int64_t high) {
    auto range = static_cast<std::uint64_t>(high - low) + 1;
    if (range == 0) return static_cast<std::int64_t>(gen_());
    std::uint64_t threshold = (0 - range) % range;
    std::uint64_t x = 0;
    do {
      x = gen_();
    } while (x < threshold);
    return low + static_cast<std::int64_t>(x % range);
  }

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::int64_t exponential(std::int64_t mean) {
    double v = -static_cast<double>(mean) * std::log1p(-uniform01());
    return std::max<std::int64_t>(1, std::llround(v));
  }

 private:
  std::mt19937_64 gen_;
};

struct ProcInfo {
  const BusinessProcess* process = nullptr;
  std::map<std::string, std::vector<std::string>, std::less<>> next;
  std::map<std::string, int, std::less<>> forward_in;
  std::set<std::pair<std::string, std::string>> back_edges;
  std::set<std::string, std::less<>> reachable;
};

ProcInfo analyze(const BusinessProcess& process) {
  ProcInfo info;
  info.process = &process;
  for (const auto& child : process.children) info.next[name_of(child)] = successors(process, name_of(child));
  const auto* start = process.start();
  if (start == nullptr) return info;

  // Iterative DFS; an edge into a node still on the stack closes a loop.
  std::map<std::string, int> color;
  std::vector<std::pair<std::string, std::size_t>> stack{{start->name, 0}};
  color[start->name] = 1;
  info.reachable.insert(start->name);
  while (!stack.empty()) {
    auto& [cur, pos] = stack.back();
    const auto& out = info.next[cur];
    if (pos == out.size()) {
      color[cur] = 2;
      stack.pop_back();
      continue;
    }
    std::string to = out[pos++];
    std::string from = cur;
    if (color[to] == 1) {
      info.back_edges.insert({from, to});
    } else {
      ++info.forward_in[to];
      if (color[to] == 0) {
        color[to] = 1;
        info.reachable.insert(to);
        stack.emplace_back(to, 0);
      }
    }
  }
  return info;
}

std::vector<std::string> closure(const ProcessModel& model, const std::vector<std::string>& roots) {
  std::vector<std::string> out;
  std::vector<std::string> todo(roots.rbegin(), roots.rend());
  while (!todo.empty()) {
    auto name = todo.back();
    todo.pop_back();
    if (std::find(out.begin(), out.end(), name) != out.end()) continue;
    const auto* p = model.find_process(name);
    if (p == nullptr) continue;
    out.push_back(name);
    auto info = analyze(*p);
    for (const auto& child : p->children) {
      const auto* call = std::get_if<SubprocessCall>(&child);
      if (call != nullptr && info.reachable.count(call->name) != 0) todo.push_back(call->target);
    }
  }
  return out;
}

std::vector<Diagnostic> annotation_gaps(const ProcessModel& model, const std::vector<std::string>& processes) {
  std::vector<Diagnostic> out;
  for (const auto& name : processes) {
    const auto* p = model.find_process(name);
    auto info = analyze(*p);
    for (const auto& child : p->children) {
      if (info.reachable.count(name_of(child)) == 0) continue;
      std::string where = p->name + "/" + name_of(child);
      if (const auto* t = std::get_if<Task>(&child)) {
        if (!t->duration) out.push_back(make_error("SIM_DURATION", where, "task has no duration"));
      } else if (const auto* d = std::get_if<Decision>(&child)) {
        bool missing = std::any_of(d->branches.begin(), d->branches.end(),
                                   [](const Branch& b) { return !b.probability; });
        if (missing) out.push_back(make_error("SIM_PROBABILITY", where, "decision branches lack probabilities"));
      }
    }
  }
  return out;
}

std::vector<std::string> root_names(const ProcessModel& model) {
  std::vector<std::string> out;
  for (const auto* p : model.root_processes()) out.push_back(p->name);
  return out;
}

class Engine {
 public:
  Engine(const ProcessModel& model, const SimConfig& config) : model_(model), config_(config) {
    if (config.runs < 1) throw ConfigError("runs must be at least 1");
    if (config.arrival.seconds <= 0) throw ConfigError("arrival interval must be positive");
    if (config.base_row_no < 1) throw ConfigError("base row number must be positive");
    auto model_diags = validate_model(model);
    for (const auto& d : model_diags) {
      if (d.severity == Severity::Error) throw ConfigError("invalid model: " + format_line(d));
    }
    if (config.root) {
      if (model.find_process(*config.root) == nullptr) throw ConfigError("unknown root process '" + *config.root + "'");
      root_ = *config.root;
    } else {
      auto roots = root_names(model);
      if (roots.size() != 1) throw ConfigError("model has several top-level processes; choose one");
      root_ = roots.front();
    }
    auto processes = closure(model, {root_});
    auto gaps = annotation_gaps(model, processes);
    if (!gaps.empty()) throw ConfigError("missing simulation annotations: " + format_line(gaps.front()));
    for (const auto& name : processes) {
      const auto* p = model.find_process(name);
      info_.emplace(name, analyze(*p));
      for (const auto& child : p->children) {
        const auto* t = std::get_if<Task>(&child);
        if (t == nullptr || info_[name].reachable.count(t->name) == 0) continue;
        if (candidates(*t).empty()) throw ConfigError("task '" + t->name + "' has no performer to draw from");
      }
    }
    for (const auto& r : model.resources) level_[r.name] = r.capacity;
  }

  SimResult run() {
    std::int64_t arrival = config_.start_epoch;
    for (int k = 0; k < config_.runs; ++k) {
      if (k > 0) {
        arrival += config_.arrival.kind == Arrival::Kind::Fixed ? config_.arrival.seconds
                                                                : stream("arrival").exponential(config_.arrival.seconds);
      }
      push({arrival, 0, EventKind::Arrival, static_cast<std::size_t>(k)});
    }

    std::int64_t now = config_.start_epoch;
    while (!events_.empty()) {
      now = events_.top().time;
      while (!events_.empty() && events_.top().time == now) {
        Event e = events_.top();
        events_.pop();
        handle(e);
      }
      dispatch(now);
    }

    if (!waiting_.empty() || finished_roots_ != config_.runs) {
      std::vector<std::string> stuck;
      for (auto o : waiting_) stuck.push_back(frames_[occ_[o].frame].id + ":" + occ_[o].task->name);
      for (const auto& f : frames_) {
        for (const auto& [element, count] : f.arrivals) {
          if (count > 0 && !f.done) stuck.push_back(f.id + ":" + f.info->process->name + "/" + element);
        }
      }
      throw DeadlockError(now, std::move(stuck));
    }

    std::stable_sort(rows_.begin(), rows_.end(), [](const PendingRow& a, const PendingRow& b) {
      if (*a.record.start != *b.record.start) return *a.record.start < *b.record.start;
      if (a.record.process_id != b.record.process_id) return a.record.process_id < b.record.process_id;
      return a.seq < b.seq;
    });
    SimResult result;
    std::int64_t no = config_.base_row_no;
    for (auto& r : rows_) {
      r.record.no = no++;
      result.log.records.push_back(std::move(r.record));
    }
    result.diagnostics = std::move(diagnostics_);
    result.trace = std::move(trace_);
    return result;
  }

 private:
  enum class EventKind { Arrival, Tick, Complete };

  struct Event {
    std::int64_t time;
    std::uint64_t seq;
    EventKind kind;
    std::size_t index;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  struct Frame {
    const ProcInfo* info = nullptr;
    std::string id;
    std::optional<std::size_t> parent;
    std::string call;
    std::map<std::string, int, std::less<>> arrivals;
    bool done = false;
    std::int64_t created = 0;
    std::optional<std::int64_t> first_start;
    std::size_t row = 0;
  };

  struct Occurrence {
    std::size_t frame;
    const Task* task;
    std::string resource;
    std::int64_t end = 0;
  };

  struct PendingRow {
    LogRecord record;
    std::uint64_t seq;
  };

  void push(Event e) {
    e.seq = next_seq_++;
    events_.push(e);
  }

  Stream& stream(const std::string& key) {
    auto it = streams_.find(key);
    if (it == streams_.end()) it = streams_.emplace(key, Stream(config_.seed, key)).first;
    return it->second;
  }

  std::size_t add_row(LogRecord record) {
    rows_.push_back({std::move(record), next_seq_++});
    return rows_.size() - 1;
  }

  void mark_started(std::size_t frame, std::int64_t t) {
    for (std::optional<std::size_t> f = frame; f; f = frames_[*f].parent) {
      if (frames_[*f].first_start) break;
      frames_[*f].first_start = t;
    }
  }

  std::vector<std::string> candidates(const Task& task) const {
    if (task.performer.mode == Performer::Mode::Named) return {task.performer.name};
    const auto* unit = model_.find_org_unit(task.lane);
    if (unit == nullptr) return {};
    return unit->members;
  }

  std::int64_t next_tick(std::int64_t t, std::int64_t period) const {
    std::int64_t offset = t - config_.start_epoch;
    std::int64_t n = offset <= 0 ? 0 : (offset + period - 1) / period;
    return config_.start_epoch + n * period;
  }

  void handle(const Event& e) {
    switch (e.kind) {
      case EventKind::Arrival: {
        char id[32];
        std::snprintf(id, sizeof id, "%05d", 101 + static_cast<int>(e.index));
        start_frame(root_, id, std::nullopt, {}, e.time);
        break;
      }
      case EventKind::Tick:
        waiting_.push_back(e.index);
        break;
      case EventKind::Complete:
        complete(e.index, e.time);
        break;
    }
  }

  void start_frame(const std::string& process, const std::string& id, std::optional<std::size_t> parent,
                   const std::string& call, std::int64_t t) {
    Frame f;
    f.info = &info_.at(process);
    f.id = id;
    f.parent = parent;
    f.call = call;
    f.created = t;
    LogRecord row;
    row.object_type = ObjectType::BusinessProcess;
    row.object = process;
    row.process_id = id;
    f.row = add_row(std::move(row));
    frames_.push_back(std::move(f));
    std::size_t index = frames_.size() - 1;
    const auto& start = frames_[index].info->process->start()->name;
    auto next = frames_[index].info->next.at(start);
    for (const auto& to : next) arrive(index, start, to, t);
  }

  void arrive(std::size_t frame, const std::string& from, const std::string& to, std::int64_t t) {
    if (frames_[frame].done) return;
    const auto& info = *frames_[frame].info;
    if (info.back_edges.count({from, to}) == 0) {
      auto need = info.forward_in.find(to);
      int required = need == info.forward_in.end() ? 1 : need->second;
      if (++frames_[frame].arrivals[to] < required) return;
      frames_[frame].arrivals[to] = 0;
    }
    fire(frame, to, t);
  }

  void forward(std::size_t frame, const std::string& from, std::int64_t t) {
    auto next = frames_[frame].info->next.at(from);
    for (const auto& to : next) arrive(frame, from, to, t);
  }

  void fire(std::size_t frame, const std::string& name, std::int64_t t) {
    const auto& process = *frames_[frame].info->process;
    const Element* element = process.find(name);
    if (const auto* task = std::get_if<Task>(element)) {
      occ_.push_back({frame, task, {}, 0});
      std::size_t o = occ_.size() - 1;
      if (task->every) {
        push({next_tick(t, task->every->count()), 0, EventKind::Tick, o});
      } else {
        waiting_.push_back(o);
      }
    } else if (const auto* decision = std::get_if<Decision>(element)) {
      LogRecord row;
      row.object_type = ObjectType::Decision;
      row.object = decision->name;
      row.process_id = frames_[frame].id;
      row.start = t;
      add_row(std::move(row));
      mark_started(frame, t);
      double u = stream("decision:" + process.name + "/" + decision->name).uniform01();
      double acc = 0;
      const Branch* chosen = &decision->branches.back();
      for (const auto& b : decision->branches) {
        acc += b.probability.value_or(0);
        if (u < acc) {
          chosen = &b;
          break;
        }
      }
      arrive(frame, decision->name, chosen->target, t);
    } else if (const auto* call = std::get_if<SubprocessCall>(element)) {
      start_frame(call->target, frames_[frame].id, frame, call->name, t);
    } else if (std::holds_alternative<FinishNode>(*element)) {
      finish_frame(frame, t);
    }
  }

  void finish_frame(std::size_t frame, std::int64_t t) {
    auto& f = frames_[frame];
    if (f.done) return;
    f.done = true;
    auto& row = rows_[f.row].record;
    row.start = f.first_start.value_or(f.created);
    row.end = t;
    if (f.parent) {
      forward(*f.parent, f.call, t);
    } else {
      ++finished_roots_;
    }
  }

  std::optional<std::string> free_performer(const Task& task) const {
    for (const auto& name : candidates(task)) {
      auto it = level_.find(name);
      if (it != level_.end() && it->second > 0) return name;
    }
    return std::nullopt;
  }

  void dispatch(std::int64_t t) {
    std::vector<std::size_t> still;
    for (auto o : waiting_) {
      auto& occ = occ_[o];
      auto performer = free_performer(*occ.task);
      if (!performer) {
        if (occ.task->every) {
          push({next_tick(t + 1, occ.task->every->count()), 0, EventKind::Tick, o});
        } else {
          still.push_back(o);
        }
        continue;
      }
      const auto& process = *frames_[occ.frame].info->process;
      const auto& spec = *occ.task->duration;
      std::int64_t d = spec.low.count();
      if (spec.kind == DurationSpec::Kind::Uniform) {
        d = stream("duration:" + process.name + "/" + occ.task->name).uniform_int(spec.low.count(), spec.high.count());
      }
      occ.resource = *performer;
      occ.end = t + d;
      trace_.push_back({t, occ.resource, ResourceEvent::Kind::Acquire, --level_[occ.resource]});
      LogRecord row;
      row.object_type = ObjectType::Task;
      row.object = occ.task->name;
      row.process_id = frames_[occ.frame].id;
      row.start = t;
      row.end = t + d;
      row.processing_time = d;
      row.performer = occ.resource;
      add_row(std::move(row));
      mark_started(occ.frame, t);
      push({t + d, 0, EventKind::Complete, o});
    }
    waiting_ = std::move(still);
  }

  void complete(std::size_t o, std::int64_t t) {
    auto& occ = occ_[o];
    trace_.push_back({t, occ.resource, ResourceEvent::Kind::Release, ++level_[occ.resource]});
    const auto& process = *frames_[occ.frame].info->process;
    for (const auto& flow : process.flows) {
      bool in = flow.to == occ.task->name;
      bool out = flow.from == occ.task->name;
      if (!in && !out) continue;
      const auto* ds = std::get_if<Datastore>(process.find(in ? flow.from : flow.to));
      if (ds == nullptr || !ds->material) continue;
      auto& level = level_[*ds->material];
      if (out) {
        trace_.push_back({t, *ds->material, ResourceEvent::Kind::Produce, ++level});
      } else if (level > 0) {
        trace_.push_back({t, *ds->material, ResourceEvent::Kind::Consume, --level});
      } else {
        auto d = make_warning("MATERIAL_EXHAUSTED", frames_[occ.frame].id + ":" + process.name + "/" + occ.task->name,
                              "no '" + *ds->material + "' left at " + timefmt::format_timepoint(t));
        diagnostics_.push_back(std::move(d));
      }
    }
    forward(occ.frame, occ.task->name, t);
  }

  const ProcessModel& model_;
  const SimConfig& config_;
  std::string root_;
  std::map<std::string, ProcInfo> info_;
  std::map<std::string, std::int64_t, std::less<>> level_;
  std::map<std::string, Stream> streams_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t next_seq_ = 0;
  std::vector<Frame> frames_;
  std::vector<Occurrence> occ_;
  std::vector<std::size_t> waiting_;
  std::vector<PendingRow> rows_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<ResourceEvent> trace_;
  int finished_roots_ = 0;
};

}  // namespace

std::vector<Diagnostic> check_sim_annotations(const ProcessModel& model) {
  return annotation_gaps(model, closure(model, root_names(model)));
}

SimResult simulate_detailed(const ProcessModel& model, const SimConfig& config) { return Engine(model, config).run(); }

ExecutionLog simulate(const ProcessModel& model, const SimConfig& config) {
  return simulate_detailed(model, config).log;
}

}  // namespace bpm
