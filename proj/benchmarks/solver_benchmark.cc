// Copyright 2026 The leoho Authors.
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


#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "leoho/allocator.h"
#include "leoho/config.h"
#include "leoho/matching.h"
#include "leoho/orbit.h"
#include "leoho/random.h"
#include "leoho/simulator.h"
#include "leoho/waterfill.h"

namespace leoho {
namespace {

// Slot problems from one simulated episode.
std::vector<SlotProblem> EpisodeProblems(int users, int sats, int beams,
                                         SolverKind solver) {
  ScenarioConfig c;
  c.n_users = users;
  c.n_sats = sats;
  c.n_beams = beams;
  c.solver = solver;
  EpisodeOptions keep;
  keep.keep_slots = true;
  return RunEpisode(c, Policy::kOptimized, DeriveSeed(c.master_seed, 0), keep)
      .problems;
}

void BM_Waterfill(benchmark::State& state) {
  const auto n = static_cast<size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> gain(0.01, 10.0);
  std::vector<double> g(n);
  for (auto& x : g) x = gain(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Waterfill(g, 10.0));
  }
}
BENCHMARK(BM_Waterfill)->Arg(2)->Arg(3)->Arg(16)->Arg(128);

void BM_MaxWeightMatching(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const int cols = static_cast<int>(state.range(1));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  for (auto& x : w) x = unit(rng) < 0.3 ? kForbiddenEdge : unit(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MaxWeightMatching(rows, cols, w));
  }
}
BENCHMARK(BM_MaxWeightMatching)->Args({10, 12})->Args({30, 90});

void BM_SolveSlotExact(benchmark::State& state) {
  const auto problems = EpisodeProblems(10, 6, 2, SolverKind::kExact);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveSlotExact(problems[i]));
    i = (i + 1) % problems.size();
  }
}
BENCHMARK(BM_SolveSlotExact)->Unit(benchmark::kMillisecond);

void BM_SolveSlotHeuristic(benchmark::State& state) {
  const auto problems = EpisodeProblems(30, 30, 3, SolverKind::kHeuristic);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveSlotHeuristic(problems[i]));
    i = (i + 1) % problems.size();
  }
}
BENCHMARK(BM_SolveSlotHeuristic)->Unit(benchmark::kMicrosecond);

void BM_ComputeGeometry(benchmark::State& state) {
  const Scenario scenario = PrepareScenario(ScenarioConfig{}, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeGeometry(scenario, scenario.SlotTime(1)));
  }
}
BENCHMARK(BM_ComputeGeometry)->Unit(benchmark::kMicrosecond);

void BM_SynthWalker(benchmark::State& state) {
  const UtcTime t = UtcTime::FromCalendar(2025, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SynthWalker(1584, 72, 53.0, 550.0, 17, t));
  }
}
BENCHMARK(BM_SynthWalker)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace leoho

BENCHMARK_MAIN();
