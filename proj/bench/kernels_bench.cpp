// Copyright 2026 The crossgraph Authors.
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

// Serial reference against the OpenMP path for the three parallel kernels:
// replicate runs, Monte Carlo replays and independence-number enumeration.
// Arg 0 is serial, 1 is parallel.

#include <benchmark/benchmark.h>

#include "crossgraph/verify.hpp"

namespace crossgraph {
namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Replicates(benchmark::State& state) {
  RunConfig cfg;
  cfg.graph = graph_kind::DisjointCliques{{4, 4, 4, 4}};
  cfg.num_contexts = 8;
  cfg.horizon = 4096;
  cfg.algorithms = {Algorithm::Unknown};
  cfg.params.tuned_scale = 0.02;
  cfg.params.epoch_policy = EpochLenPolicy::Divisor;
  cfg.seed = 1;
  const Experiment exp = prepare(cfg);
  for (auto _ : state) {
    auto out = run_replicates(exp, Algorithm::Unknown, 8, exec_of(state));
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Replicates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_KnownMonteCarlo(benchmark::State& state) {
  const KnownFixture fx = known_fixture(graph_kind::ErdosRenyi{8, 0.3}, 2);
  for (auto _ : state) {
    auto est = known_estimates(fx, 20000, 3, exec_of(state));
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_KnownMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PairMonteCarlo(benchmark::State& state) {
  const UnknownFixture fx = unknown_fixture(4, 5);
  for (auto _ : state) {
    auto est = unknown_pair_replays(fx, 20000, 5, exec_of(state));
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_PairMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Enumeration(benchmark::State& state) {
  Rng rng(6);
  std::vector<std::vector<std::vector<Arm>>> graphs;
  for (int i = 0; i < 200; ++i) graphs.push_back(random_digraph(16, rng.uniform(), true, rng));
  for (auto _ : state) {
    auto alphas = enumerate_independence_numbers(graphs, exec_of(state));
    benchmark::DoNotOptimize(alphas);
  }
}
BENCHMARK(BM_Enumeration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace crossgraph

BENCHMARK_MAIN();
