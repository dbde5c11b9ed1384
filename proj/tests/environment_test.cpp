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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "crossgraph/environment.hpp"
#include "doctest.h"

namespace crossgraph {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("crossgraph_" + name);
}

TEST_CASE("context sampling") {
  Rng rng(1);
  const ContextDistribution point({0.0, 0.0, 1.0, 0.0});
  for (int i = 0; i < 100; ++i) CHECK(sample_context(point, rng) == 2);

  const int n = 100000;
  std::vector<int> counts(8, 0);
  const ContextDistribution u = ContextDistribution::uniform(8);
  for (int i = 0; i < n; ++i) ++counts[sample_context(u, rng)];
  const double se = std::sqrt(0.125 * 0.875 / n);
  for (int c : counts) CHECK(std::abs(c / double(n) - 0.125) <= 3.0 * se);

  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) REQUIRE(sample_context(u, a) == sample_context(u, b));
  CHECK_THROWS_AS(ContextDistribution({0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("table oracle returns stored values") {
  std::vector<double> data(2 * 3 * 4);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = i / 100.0;
  const LossOracle o = table_oracle(3, 4, 2, data);
  CHECK(o.loss(2, 1, 3) == data[(1 * 3 + 1) * 4 + 3]);
  CHECK(loss(o, 1, 0, 0) == 0.0);
  CHECK_THROWS_AS(o.loss(3, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(o.loss(1, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(o.loss(1, 0, 4), std::out_of_range);
}

TEST_CASE("stochastic gap means are recovered") {
  const int m = 2;
  const int k = 3;
  const auto means = gap_means(m, k, 0.4, 0.2, 77);
  const LossOracle o = stochastic_gap(m, k, means, 78);
  const int n = 100000;
  for (Context c = 0; c < m; ++c) {
    for (Arm a = 0; a < k; ++a) {
      double sum = 0.0;
      for (Round t = 1; t <= n; ++t) sum += o.loss(t, c, a);
      const double mu = means[c * k + a];
      const double se = std::sqrt(mu * (1.0 - mu) / n);
      CHECK(std::abs(sum / n - mu) <= 3.0 * se);
      CHECK(o.expected_loss(1, c, a) == mu);
    }
    CHECK(means[c * k + gap_best_arm(c, k, 77)] == doctest::Approx(0.4));
  }
}

TEST_CASE("gap structure is shared across context counts") {
  const auto small = gap_means(4, 16, 0.4, 0.2, 9);
  const auto large = gap_means(64, 16, 0.4, 0.2, 9);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
}

TEST_CASE("losses are oblivious to query order") {
  const LossOracle o = stochastic_gap(3, 5, gap_means(3, 5, 0.3, 0.3, 1), 2);
  std::vector<double> forward;
  for (Round t = 1; t <= 50; ++t) {
    for (Context c = 0; c < 3; ++c) {
      for (Arm a = 0; a < 5; ++a) forward.push_back(o.loss(t, c, a));
    }
  }
  std::size_t i = forward.size();
  for (Round t = 50; t >= 1; --t) {
    for (Context c = 2; c >= 0; --c) {
      for (Arm a = 4; a >= 0; --a) REQUIRE(o.loss(t, c, a) == forward[--i]);
    }
  }
}

TEST_CASE("adversarial shift switches at quarter boundaries") {
  const Round horizon = 10;
  const LossOracle o = adversarial_shift(2, 4, horizon, 0.0, 1.0, 3);
  const auto& kind = std::get<oracle_kind::AdversarialShift>(o.kind());
  for (Round t = 1; t <= horizon; ++t) {
    const int segment = static_cast<int>((t - 1) / 3);
    for (Context c = 0; c < 2; ++c) {
      const Arm best = kind.best[segment * 2 + c];
      for (Arm a = 0; a < 4; ++a) {
        CHECK(o.expected_loss(t, c, a) == (a == best ? 0.0 : 1.0));
      }
    }
  }
}

TEST_CASE("all losses lie in [0, 1]") {
  Rng rng(4);
  const LossOracle gap = stochastic_gap(4, 6, gap_means(4, 6, 0.2, 0.7, 1), 2);
  const LossOracle shift = adversarial_shift(4, 6, 1000, 0.1, 0.8, 3);
  const LossOracle auction =
      auction_losses(linear_grid(4), linear_grid(6), random_opposing_bids(1000, 5));
  for (int i = 0; i < 100000; ++i) {
    const Round t = 1 + static_cast<Round>(rng.below(1000));
    const Context c = static_cast<Context>(rng.below(4));
    const Arm a = static_cast<Arm>(rng.below(6));
    for (const LossOracle* o : {&gap, &shift, &auction}) {
      const double l = o->loss(t, c, a);
      REQUIRE(l >= 0.0);
      REQUIRE(l <= 1.0);
    }
  }
}

TEST_CASE("auction normalization") {
  // values {0.5, 1.0}, bids {0, 0.5, 1.0}, opposing bids per round.
  const LossOracle o = auction_losses({0.5, 1.0}, {0.0, 0.5, 1.0}, {0.5, 0.0, 0.75});
  CHECK(o.loss(1, 0, 1) == 0.5);   // win, value equals bid
  CHECK(o.loss(1, 1, 0) == 0.5);   // lose
  CHECK(o.loss(2, 1, 0) == 0.0);   // win with v=1, b=0, m=0
  CHECK(o.loss(3, 0, 2) == 0.75);  // overbid: u = -0.5
  CHECK(o.loss(1, 1, 1) == 0.25);
  CHECK_THROWS_AS(auction_losses({1.0, 0.5}, {0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(auction_losses({0.5}, {0.5, 0.1}, {0.0}), std::invalid_argument);
}

TEST_CASE("reveal covers exactly the out-neighborhood") {
  const LossOracle o = stochastic_gap(3, 6, gap_means(3, 6, 0.4, 0.2, 1), 2);
  const FeedbackGraph complete = build_graph(graph_kind::Complete{6}, 0);
  const Reveal full = reveal(o, complete, 7, 2);
  CHECK(full.arms == std::vector<Arm>{0, 1, 2, 3, 4, 5});
  for (std::size_t i = 0; i < full.arms.size(); ++i) {
    for (Context c = 0; c < 3; ++c) CHECK(full.loss(i, c) == o.loss(7, c, full.arms[i]));
  }
  const FeedbackGraph loops = build_graph(graph_kind::SelfLoopsOnly{6}, 0);
  CHECK(reveal(o, loops, 7, 4).arms == std::vector<Arm>{4});
  const FeedbackGraph cliques = build_graph(graph_kind::DisjointCliques{{2, 4}}, 0);
  CHECK(reveal(o, cliques, 7, 3).arms == std::vector<Arm>{2, 3, 4, 5});
  CHECK(reveal(o, cliques, 7, 1).arms == std::vector<Arm>{0, 1});

  Rng rng(3);
  const FeedbackGraph er = build_graph(graph_kind::ErdosRenyi{6, 0.4}, 8);
  for (int i = 0; i < 200; ++i) {
    const Arm a = static_cast<Arm>(rng.below(6));
    const Reveal r = reveal(o, er, 1 + static_cast<Round>(rng.below(100)), a);
    const auto out = er.out_neighbors(a);
    REQUIRE(std::vector<Arm>(out.begin(), out.end()) == r.arms);
    REQUIRE(r.losses.size() == r.arms.size() * 3);
  }
}

TEST_CASE("table files round trip") {
  std::vector<double> data(3 * 2 * 4);
  Rng rng(6);
  for (auto& x : data) x = rng.uniform();
  const LossOracle o = table_oracle(2, 4, 3, data);
  const auto csv = temp_file("table.csv");
  const auto bin = temp_file("table.bin");
  save_table_csv(o, csv);
  save_table_binary(o, bin);
  const LossOracle from_csv = load_table_csv(csv);
  const LossOracle from_bin = load_table_binary(bin);
  for (Round t = 1; t <= 3; ++t) {
    for (Context c = 0; c < 2; ++c) {
      for (Arm a = 0; a < 4; ++a) {
        CHECK(from_csv.loss(t, c, a) == o.loss(t, c, a));
        CHECK(from_bin.loss(t, c, a) == o.loss(t, c, a));
      }
    }
  }
  std::filesystem::remove(csv);
  std::filesystem::remove(bin);
}

TEST_CASE("incomplete or out-of-range table csv is rejected") {
  const auto path = temp_file("bad.csv");
  {
    std::ofstream out(path);
    out << "t,c,a,loss\n1,0,0,0.5\n1,0,1,0.5\n1,1,0,0.5\n";
  }
  CHECK_THROWS_AS(load_table_csv(path), std::invalid_argument);
  {
    std::ofstream out(path);
    out << "1,0,0,1.5\n";
  }
  CHECK_THROWS_AS(load_table_csv(path), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST_CASE("opposing bids csv") {
  const auto path = temp_file("bids.csv");
  {
    std::ofstream out(path);
    out << "t,bid\n1,0.25\n2,0.5\n";
  }
  CHECK(load_opposing_bids_csv(path) == std::vector<double>{0.25, 0.5});
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace crossgraph
