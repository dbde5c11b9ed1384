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
#include <filesystem>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "crossgraph/graph.hpp"
#include "crossgraph/rng.hpp"
#include "crossgraph/simplex.hpp"

namespace crossgraph {

using Context = int;
// Rounds are numbered from 1; arms and contexts from 0.
using Round = std::int64_t;

// Distribution nu over contexts [0, M).
class ContextDistribution {
 public:
  explicit ContextDistribution(std::vector<double> probs);
  static ContextDistribution uniform(int num_contexts);

  int num_contexts() const { return static_cast<int>(probs_.size()); }
  double operator[](Context c) const { return probs_[c]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

Context sample_context(const ContextDistribution& nu, Rng& rng);

namespace oracle_kind {
// Bernoulli losses with mean means[c * K + a]; the coin for (t, c, a) is a
// hash of (seed, t, c, a).
struct StochasticGap {
  std::vector<double> means;
};
// Bernoulli losses with mean base + gap * [a != best]. The best arm of each
// context is redrawn every ceil(T / 4) rounds.
struct AdversarialShift {
  double base;
  double gap;
  std::vector<Arm> best;  // [segment * M + c], 4 segments
};
// First-price auction: context = private value, arm = bid, opponents'
// highest bid per round in `opposing`.
struct Auction {
  std::vector<double> values;
  std::vector<double> bids;
  std::vector<double> opposing;
};
// Explicit tensor, data[((t - 1) * M + c) * K + a].
struct Table {
  std::vector<double> data;
};
}  // namespace oracle_kind

// Oblivious adversary: loss(t, c, a) is a pure function of the oracle's
// immutable contents and seed.
class LossOracle {
 public:
  using Kind = std::variant<oracle_kind::StochasticGap,
                            oracle_kind::AdversarialShift, oracle_kind::Auction,
                            oracle_kind::Table>;

  LossOracle(Kind kind, int num_contexts, int num_arms,
             std::optional<Round> horizon, std::uint64_t seed);

  int num_contexts() const { return num_contexts_; }
  int num_arms() const { return num_arms_; }
  std::optional<Round> horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }
  const Kind& kind() const { return kind_; }

  double loss(Round t, Context c, Arm a) const;

  // Mean loss of (c, a) at round t under the oracle's own randomness; equals
  // loss() for deterministic kinds.
  double expected_loss(Round t, Context c, Arm a) const;

 private:
  void check(Round t, Context c, Arm a) const;

  Kind kind_;
  int num_contexts_;
  int num_arms_;
  std::optional<Round> horizon_;
  std::uint64_t seed_;
};

double loss(const LossOracle& oracle, Round t, Context c, Arm a);

// Means base + gap * [a != best(c)], best(c) drawn from the seed. Context c
// gets the same best arm for every M, so sweeps over M share structure.
std::vector<double> gap_means(int num_contexts, int num_arms, double base,
                              double gap, std::uint64_t seed);
Arm gap_best_arm(Context c, int num_arms, std::uint64_t seed);

LossOracle stochastic_gap(int num_contexts, int num_arms,
                          std::vector<double> means, std::uint64_t seed);
LossOracle adversarial_shift(int num_contexts, int num_arms, Round horizon,
                             double base, double gap, std::uint64_t seed);
LossOracle table_oracle(int num_contexts, int num_arms, Round horizon,
                        std::vector<double> data);

// loss = (1 - u) / 2 with u = clamp((v_c - b_a) * [b_a >= m_t], -1, 1).
// Grids must be ascending and lie in [0, 1].
LossOracle auction_losses(std::vector<double> value_grid,
                          std::vector<double> bid_grid,
                          std::vector<double> opposing_bids);
std::vector<double> random_opposing_bids(Round horizon, std::uint64_t seed);
std::vector<double> linear_grid(int n);

// Table tensors: CSV with header t,c,a,loss (t from 1), or the binary form
// "XGLT" magic, uint32 T, M, K, then T*M*K little-endian float64.
LossOracle load_table_csv(const std::filesystem::path& path);
LossOracle load_table_binary(const std::filesystem::path& path);
void save_table_csv(const LossOracle& oracle, const std::filesystem::path& path);
void save_table_binary(const LossOracle& oracle,
                       const std::filesystem::path& path);
// One bid per line; an optional header and an optional leading round column.
std::vector<double> load_opposing_bids_csv(const std::filesystem::path& path);

// Feedback after playing an arm: losses of every out-neighbor, under every
// context.
struct Reveal {
  Round t = 0;
  Arm played_arm = 0;
  int num_contexts = 0;
  std::vector<Arm> arms;        // out_neighbors(played_arm)
  std::vector<double> losses;   // [i * num_contexts + c] for arms[i]

  double loss(std::size_t i, Context c) const {
    return losses[i * num_contexts + c];
  }
};

Reveal reveal(const LossOracle& oracle, const FeedbackGraph& graph, Round t,
              Arm played_arm);

}  // namespace crossgraph
