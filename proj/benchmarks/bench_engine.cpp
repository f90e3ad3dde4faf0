// Copyright 2026 The swissrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "swissrank/analysis.hpp"
#include "swissrank/monte_carlo.hpp"
#include "swissrank/random.hpp"
#include "swissrank/swiss_engine.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace {

using namespace swissrank;

WinRateTensor synthetic(std::size_t m, std::size_t k) {
  std::vector<ModelId> models;
  for (std::size_t i = 0; i < m; ++i) models.push_back("m" + std::to_string(i));
  std::vector<std::string> rounds;
  for (std::size_t r = 0; r < k; ++r) rounds.push_back("r" + std::to_string(r));
  auto w = WinRateTensor::uniform(models, rounds);
  std::mt19937_64 gen(m * 131 + k);
  std::uniform_int_distribution<int> steps(0, 1024);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t r = 0; r < k; ++r) w.set(i, j, r, steps(gen) / 1024.0);
  return w;
}

void BM_ContestRunner(benchmark::State& state) {
  const auto w = synthetic(static_cast<std::size_t>(state.range(0)), 12);
  const auto schedule = EliminationSchedule::constant(1);
  ContestRunner runner(w, schedule);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RandomStream rng(1, i++);
    benchmark::DoNotOptimize(runner.run(rng).matches_played);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ContestRunner)->Arg(8)->Arg(29)->Arg(64);

void BM_TracedInstance(benchmark::State& state) {
  const auto w = synthetic(29, 12);
  const auto schedule = EliminationSchedule::constant(1);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RandomStream rng(2, i++);
    benchmark::DoNotOptimize(run_single_instance(w, schedule, rng).trace.size());
  }
}
BENCHMARK(BM_TracedInstance);

void BM_Estimate(benchmark::State& state) {
  const auto w = synthetic(29, 12);
  SimulationConfig config;
  config.iterations = static_cast<std::uint64_t>(state.range(0));
  config.schedule = EliminationSchedule::constant(1);
  config.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate(w, config).expected_scores.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Estimate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ExactOracle(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto w = synthetic(m, 3);
  const auto schedule = EliminationSchedule::constant(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_expected_scores(w, schedule).distinct_states);
}
BENCHMARK(BM_ExactOracle)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
