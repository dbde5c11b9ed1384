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

#include "crossgraph/oracles.hpp"

#include <bit>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace crossgraph {

namespace {

constexpr int kChunks = 64;

}  // namespace

int enumerate_independence_number(std::span<const std::vector<Arm>> out) {
  const int k = static_cast<int>(out.size());
  if (k > 24) throw std::invalid_argument("enumeration limited to K <= 24");
  if (k == 0) return 0;
  std::vector<std::uint32_t> conflict(k, 0);
  for (int i = 0; i < k; ++i) {
    for (Arm j : out[i]) {
      if (j == i) continue;
      conflict[i] |= 1u << j;
      conflict[j] |= 1u << i;
    }
  }
  const std::uint32_t total = 1u << k;
  std::vector<std::uint8_t> independent(total, 0);
  independent[0] = 1;
  int best = 0;
  for (std::uint32_t s = 1; s < total; ++s) {
    const int low = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    independent[s] = independent[rest] && (conflict[low] & rest) == 0;
    if (independent[s]) best = std::max(best, std::popcount(s));
  }
  return best;
}

std::vector<int> enumerate_independence_numbers(
    std::span<const std::vector<std::vector<Arm>>> graphs, Execution exec) {
  const int n = static_cast<int>(graphs.size());
  std::vector<int> out(n, 0);
  if (exec == Execution::Serial) {
    for (int i = 0; i < n; ++i) out[i] = enumerate_independence_number(graphs[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = enumerate_independence_number(graphs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::vector<Arm>> random_digraph(int num_arms, double edge_prob,
                                             bool self_loops, Rng& rng) {
  std::vector<std::vector<Arm>> out(num_arms);
  for (int i = 0; i < num_arms; ++i) {
    for (int j = 0; j < num_arms; ++j) {
      if (i == j) {
        if (self_loops) out[i].push_back(j);
      } else if (rng.bernoulli(edge_prob)) {
        out[i].push_back(j);
      }
    }
  }
  return out;
}

std::vector<double> random_simplex_point(int k, double floor, Rng& rng) {
  if (floor * k > 1.0) throw std::invalid_argument("floor too large for K");
  std::vector<double> raw(k);
  double total = 0.0;
  for (auto& x : raw) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : raw) x = floor + (1.0 - floor * k) * x / total;
  return raw;
}

double graph_inverse_sum(std::span<const std::vector<Arm>> out,
                         std::span<const double> w) {
  const std::size_t k = out.size();
  std::vector<double> in_mass(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (Arm j : out[i]) in_mass[j] += w[i];
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += w[i] / in_mass[i];
  return sum;
}

MomentEstimate monte_carlo(long long replays, int dims, std::uint64_t seed,
                           const ReplayKernel& kernel, Execution exec) {
  if (replays < 2 || dims < 1) {
    throw std::invalid_argument("monte_carlo needs >= 2 replays and >= 1 dim");
  }
  std::vector<std::vector<double>> sums(kChunks, std::vector<double>(dims, 0.0));
  std::vector<std::vector<double>> squares(kChunks,
                                           std::vector<double>(dims, 0.0));
  std::vector<std::exception_ptr> errors(kChunks);
  auto run_chunk = [&](int chunk) {
    const long long begin = replays * chunk / kChunks;
    const long long end = replays * (chunk + 1) / kChunks;
    Rng rng(derive_seed(seed, stream::kOracle, static_cast<std::uint64_t>(chunk)));
    std::vector<double> value(dims);
    for (long long i = begin; i < end; ++i) {
      std::fill(value.begin(), value.end(), 0.0);
      kernel(rng, value);
      for (int d = 0; d < dims; ++d) {
        sums[chunk][d] += value[d];
        squares[chunk][d] += value[d] * value[d];
      }
    }
  };
  if (exec == Execution::Serial) {
    for (int c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < kChunks; ++c) {
      try {
        run_chunk(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  MomentEstimate est;
  est.n = replays;
  est.mean.assign(dims, 0.0);
  est.stderr_.assign(dims, 0.0);
  const double n = static_cast<double>(replays);
  for (int d = 0; d < dims; ++d) {
    double s = 0.0;
    double q = 0.0;
    for (int c = 0; c < kChunks; ++c) {
      s += sums[c][d];
      q += squares[c][d];
    }
    const double mean = s / n;
    const double var = std::max(0.0, (q - n * mean * mean) / (n - 1.0));
    est.mean[d] = mean;
    est.stderr_[d] = std::sqrt(var / n);
  }
  return est;
}

bool within_stderr(double mean, double se, double target, double k) {
  if (se == 0.0) return std::abs(mean - target) <= 1e-12;
  return std::abs(mean - target) <= k * se;
}

}  // namespace crossgraph
