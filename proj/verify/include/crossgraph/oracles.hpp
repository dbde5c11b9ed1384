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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "crossgraph/graph.hpp"
#include "crossgraph/harness.hpp"
#include "crossgraph/rng.hpp"

namespace crossgraph {

// Independent reference implementations used by the test suite and the
// verify command. None of them share code with the library paths they check.

// Largest independent set under the either-direction conflict relation by
// enumerating all 2^K subsets. K <= 24.
int enumerate_independence_number(std::span<const std::vector<Arm>> out);

// Enumeration over many graphs at once; the parallel path splits graphs
// across OpenMP threads.
std::vector<int> enumerate_independence_numbers(
    std::span<const std::vector<std::vector<Arm>>> graphs, Execution exec);

// Random digraph: each ordered pair (i, j), i != j, is an edge with
// probability p. Self-loops on every arm when `self_loops`.
std::vector<std::vector<Arm>> random_digraph(int num_arms, double edge_prob,
                                             bool self_loops, Rng& rng);

// Point of the simplex with every coordinate >= floor.
std::vector<double> random_simplex_point(int k, double floor, Rng& rng);

// sum_i w_i / w(N_in(i)) evaluated from the raw adjacency lists.
double graph_inverse_sum(std::span<const std::vector<Arm>> out,
                         std::span<const double> w);

// Per-coordinate sample mean and standard error.
struct MomentEstimate {
  std::vector<double> mean;
  std::vector<double> stderr_;
  long long n = 0;
};

// One replay writes `dims` values into its output span.
using ReplayKernel = std::function<void(Rng&, std::span<double>)>;

// Runs `replays` independent replays in a fixed number of chunks, each chunk
// seeded from (seed, chunk index) and reduced in chunk order, so the result
// is the same for serial and parallel execution. The kernel must be safe to
// call concurrently.
MomentEstimate monte_carlo(long long replays, int dims, std::uint64_t seed,
                           const ReplayKernel& kernel,
                           Execution exec = Execution::Parallel);

// |mean - target| <= k * se, with an exact match required when se == 0.
bool within_stderr(double mean, double se, double target, double k = 3.0);

}  // namespace crossgraph
