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

#include <algorithm>
#include <cmath>

#include "crossgraph/verify.hpp"
#include "doctest.h"

namespace crossgraph {
namespace {

std::shared_ptr<const FeedbackGraph> make_graph(const GraphSpec& spec) {
  return std::make_shared<const FeedbackGraph>(build_graph(spec, 0));
}

TEST_CASE("known importance at a uniform start") {
  const auto nu = ContextDistribution::uniform(3);
  CHECK(KnownDistLearner(make_graph(graph_kind::Complete{4}), nu, 0.1)
            .known_importance(2) == doctest::Approx(1.0));
  CHECK(KnownDistLearner(make_graph(graph_kind::SelfLoopsOnly{4}), nu, 0.1)
            .known_importance(2) == doctest::Approx(0.25));
  CHECK(KnownDistLearner(make_graph(graph_kind::DisjointCliques{{2, 2}}), nu, 0.1)
            .known_importance(0) == doctest::Approx(0.5));
}

TEST_CASE("known importance mixes contexts by nu") {
  auto g = make_graph(graph_kind::SelfLoopsOnly{2});
  KnownDistLearner learner(g, ContextDistribution({0.25, 0.75}), 1.0);
  // context 0 plays arm 0 with prob 2/3, context 1 stays uniform.
  learner.set_cumulative({CumulativeLoss(std::vector<double>{0.0, std::log(2.0)}),
                          CumulativeLoss(2)});
  CHECK(learner.distribution(0)[0] == doctest::Approx(2.0 / 3.0));
  CHECK(learner.known_importance(0) ==
        doctest::Approx(0.25 * 2.0 / 3.0 + 0.75 * 0.5));
}

TEST_CASE("known learner update uses importance weighting for every context") {
  auto g = make_graph(graph_kind::DisjointCliques{{2, 2}});
  KnownDistLearner learner(g, ContextDistribution::uniform(2), 0.1);
  std::vector<double> data(2 * 4);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = 0.1 * (i + 1);
  const LossOracle o = table_oracle(2, 4, 1, data);
  Rng rng(1);
  const Arm a = learner.act(1, 0, rng);
  const Reveal r = reveal(o, *g, 1, a);
  learner.update(r);
  for (Arm b : r.arms) {
    for (Context c = 0; c < 2; ++c) {
      CHECK(learner.cumulative()[c][b] == doctest::Approx(o.loss(1, c, b) / 0.5));
    }
  }
  CHECK(learner.round() == 1);
}

TEST_CASE("known learner rejects out-of-order calls") {
  auto g = make_graph(graph_kind::Complete{3});
  KnownDistLearner learner(g, ContextDistribution::uniform(1), 0.1);
  Rng rng(2);
  CHECK_THROWS_AS(learner.act(2, 0, rng), InvariantViolation);
  learner.act(1, 0, rng);
  CHECK_THROWS_AS(learner.act(1, 0, rng), InvariantViolation);
}

TEST_CASE("known learner estimates are unbiased") {
  const KnownFixture fx = known_fixture(graph_kind::ErdosRenyi{6, 0.4}, 5);
  const MomentEstimate est = known_estimates(fx, 20000, 6);
  const int k = fx.graph->num_arms();
  int failures = 0;
  for (Context c = 0; c < fx.nu.num_contexts(); ++c) {
    for (Arm a = 0; a < k; ++a) {
      const std::size_t i = static_cast<std::size_t>(c) * k + a;
      failures += !within_stderr(est.mean[i], est.stderr_[i], fx.oracle.loss(fx.t, c, a), 4.0);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("graph-inverse bound") {
  CHECK(graph_inverse_bound(2, 8, 0.01) ==
        doctest::Approx(8.0 * std::log(4.0 * 8.0 / 0.02)));
  const std::vector<std::vector<Arm>> complete = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
  const std::vector<double> uniform(3, 1.0 / 3.0);
  CHECK(graph_inverse_sum(complete, uniform) == doctest::Approx(1.0));

  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + static_cast<int>(rng.below(10));
    const auto out = random_digraph(k, rng.uniform(), true, rng);
    const auto w = random_simplex_point(k, 1e-3, rng);
    const double eps = *std::min_element(w.begin(), w.end());
    REQUIRE(graph_inverse_sum(out, w) <=
            graph_inverse_bound(enumerate_independence_number(out), k, eps));
  }
}

}  // namespace
}  // namespace crossgraph
