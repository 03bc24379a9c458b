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

#include <benchmark/benchmark.h>

#include "bench_fixtures.hpp"
#include "bpmeasure/execution_log.hpp"
#include "bpmeasure/measure_expr.hpp"
#include "bpmeasure/model_text.hpp"
#include "bpmeasure/simulator.hpp"

namespace {

void BM_ParseModel(benchmark::State& state) {
  const auto text = bpm::bench::read_fixture("pizza.bpm");
  for (auto _ : state) benchmark::DoNotOptimize(bpm::parse_model(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseModel);

void BM_SerializeModel(benchmark::State& state) {
  const auto model = bpm::parse_model(bpm::bench::read_fixture("pizza.bpm"));
  for (auto _ : state) benchmark::DoNotOptimize(bpm::serialize_model(model));
}
BENCHMARK(BM_SerializeModel);

void BM_ParseMeasure(benchmark::State& state) {
  const auto units = bpm::UnitTable::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpm::parse_measure("Cost=2 EUR/hour*Processing Time, EUR", units));
  }
}
BENCHMARK(BM_ParseMeasure);

// Log of `runs` simulated pizza orders, parsed back from CSV.
void BM_ParseLog(benchmark::State& state) {
  const auto model = bpm::parse_model(bpm::bench::read_fixture("pizza.bpm"));
  bpm::SimConfig config;
  config.runs = static_cast<int>(state.range(0));
  const auto text = bpm::render_log(bpm::simulate(model, config));
  for (auto _ : state) benchmark::DoNotOptimize(bpm::parse_log(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseLog)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
