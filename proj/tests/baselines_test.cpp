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

#include "crossgraph/verify.hpp"
#include "doctest.h"

namespace crossgraph {
namespace {

std::shared_ptr<const FeedbackGraph> make_graph(const GraphSpec& spec) {
  return std::make_shared<const FeedbackGraph>(build_graph(spec, 0));
}

BaselineSpec per_context(int m, double eta, double gamma_ix) {
  BaselineSpec spec;
  spec.kind = BaselineKind::PerContextExp3G;
  spec.eta.assign(m, eta);
  spec.gamma_ix.assign(m, gamma_ix);
  return spec;
}

// Learner for context 0 after a few rounds on a random table, frozen at
// round t = 21.
struct Frozen {
  std::shared_ptr<const FeedbackGraph> graph;
  BaselineLearner learner;
  LossOracle oracle;
};

Frozen frozen(double gamma_ix) {
  auto g = make_graph(graph_kind::DisjointCliques{{2, 3}});
  std::vector<double> data(21 * 2 * 5);
  Rng rng(17);
  for (auto& x : data) x = rng.uniform();
  LossOracle o = table_oracle(2, 5, 21, data);
  BaselineLearner learner(g, 2, per_context(2, 0.3, gamma_ix));
  for (Round t = 1; t <= 20; ++t) {
    const Context c = static_cast<Context>(t % 2);
    const Arm a = learner.act(t, c, rng);
    learner.update(reveal(o, *g, t, a));
  }
  return Frozen{g, std::move(learner), std::move(o)};
}

TEST_CASE("default baseline rates") {
  const ContextDistribution nu({0.25, 0.75});
  const BaselineSpec pc =
      default_baseline(BaselineKind::PerContextExp3G, 8, 2, 1000, nu);
  REQUIRE(pc.eta.size() == 2);
  CHECK(pc.eta[0] == doctest::Approx(default_known_eta(8, 2, 250)));
  CHECK(pc.eta[1] == doctest::Approx(default_known_eta(8, 2, 750)));
  CHECK(pc.gamma_ix == pc.eta);
  const BaselineSpec pooled = default_baseline(BaselineKind::PooledExp3G, 8, 2, 1000, nu);
  REQUIRE(pooled.eta.size() == 1);
  CHECK(pooled.eta[0] == doctest::Approx(default_known_eta(8, 2, 1000)));
  CHECK(default_baseline(BaselineKind::Uniform, 8, 2, 1000, nu).eta.empty());
}

TEST_CASE("per-context baseline ignores other contexts") {
  auto g = make_graph(graph_kind::Complete{3});
  BaselineLearner learner(g, 2, per_context(2, 0.5, 0.0));
  const LossOracle o = table_oracle(2, 3, 1, {0.1, 0.2, 0.3, 0.9, 0.8, 0.7});
  Rng rng(1);
  const Arm a = learner.act(1, 1, rng);
  learner.update(reveal(o, *g, 1, a));
  for (Arm b = 0; b < 3; ++b) {
    CHECK(learner.states()[0][b] == 0.0);
    CHECK(learner.states()[1][b] == doctest::Approx(o.loss(1, 1, b)));
  }
}

TEST_CASE("implicit exploration shrinks the estimate") {
  auto g = make_graph(graph_kind::SelfLoopsOnly{2});
  BaselineLearner learner(g, 1, per_context(1, 0.5, 0.5));
  const LossOracle o = table_oracle(1, 2, 1, {1.0, 1.0});
  Rng rng(2);
  const Arm a = learner.act(1, 0, rng);
  learner.update(reveal(o, *g, 1, a));
  CHECK(learner.states()[0][a] == doctest::Approx(1.0 / (0.5 + 0.5)));
}

TEST_CASE("uniform baseline never learns") {
  auto g = make_graph(graph_kind::Complete{4});
  BaselineLearner learner(g, 3, BaselineSpec{});
  const LossOracle o = stochastic_gap(3, 4, gap_means(3, 4, 0.4, 0.2, 1), 2);
  Rng rng(3);
  for (Round t = 1; t <= 50; ++t) {
    const Arm a = learner.act(t, static_cast<Context>(t % 3), rng);
    learner.update(reveal(o, *g, t, a));
    for (double x : learner.played_distribution()) REQUIRE(x == 0.25);
  }
  CHECK(learner.states().empty());
}

TEST_CASE("baseline estimates match the implicit-exploration mean") {
  const double gamma_ix = 0.2;
  const Frozen fx = frozen(gamma_ix);
  const Round t = 21;
  const Context c = 1;
  const MomentEstimate est = baseline_estimates(fx.learner, fx.oracle, t, c, 40000, 18);
  const SimplexVector p = fx.learner.distribution(c);
  int failures = 0;
  for (Arm a = 0; a < 5; ++a) {
    const double w = neighborhood_mass(p.weights(), a, *fx.graph);
    const double target = fx.oracle.loss(t, c, a) * w / (w + gamma_ix);
    failures += !within_stderr(est.mean[a], est.stderr_[a], target, 4.0);
  }
  CHECK(failures == 0);
}

TEST_CASE("the implicit-exploration oracle detects a learner without it") {
  // Mutant: the learner runs with gamma_ix = 0, the oracle still expects the
  // shrunken mean.
  const Frozen fx = frozen(0.0);
  const Round t = 21;
  const Context c = 1;
  const MomentEstimate est = baseline_estimates(fx.learner, fx.oracle, t, c, 40000, 19);
  const SimplexVector p = fx.learner.distribution(c);
  int failures = 0;
  for (Arm a = 0; a < 5; ++a) {
    const double w = neighborhood_mass(p.weights(), a, *fx.graph);
    const double target = fx.oracle.loss(t, c, a) * w / (w + 0.2);
    failures += !within_stderr(est.mean[a], est.stderr_[a], target, 4.0);
  }
  CHECK(failures > 0);
}

}  // namespace
}  // namespace crossgraph
