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

ParamSchedule manual(int epoch_len, double gamma, double eta) {
  ParamSchedule p;
  p.iota = 6.0;
  p.epoch_len = epoch_len;
  p.gamma = gamma;
  p.eta = eta;
  return p;
}

TEST_CASE("schedule for K=16, T=4096, alpha=4") {
  const ParamSchedule s = schedule_params(16, 4096, 4);
  CHECK(s.iota == doctest::Approx(2.0 * std::log(8.0 * 16 * 4096.0 * 4096.0)));
  CHECK(s.iota == doctest::Approx(42.98).epsilon(1e-3));
  CHECK(s.epoch_len == 504);
  CHECK(s.gamma == doctest::Approx(16.0 * s.iota / 504));
  CHECK(s.eta == doctest::Approx(s.gamma / (2.0 * (2.0 * 504 * s.gamma + s.iota))));
  const ParamSchedule tuned = schedule_params(16, 4096, 4, 0.02);
  CHECK(tuned.gamma == doctest::Approx(0.02 * s.gamma));
}

TEST_CASE("horizon must be a multiple of the epoch length") {
  CHECK_NOTHROW(validate_horizon(1008, 504));
  try {
    validate_horizon(1000, 504);
    FAIL("expected HorizonError");
  } catch (const HorizonError& e) {
    CHECK(e.suggested_horizon() == 1008);
    CHECK(std::string(e.what()).find("T=1008") != std::string::npos);
  }
  CHECK(snap_epoch_len(4096, 504) == 512);
  CHECK(snap_epoch_len(1000, 232) == 250);
  CHECK_THROWS_AS(snap_epoch_len(1001, 10), std::invalid_argument);
}

TEST_CASE("rejection check and fallback") {
  const SimplexVector s({0.5, 0.5});
  CHECK(passes_rejection_check(SimplexVector({0.3, 0.7}), s));
  CHECK(passes_rejection_check(SimplexVector({0.25, 0.75}), s));
  CHECK_FALSE(passes_rejection_check(SimplexVector({0.2, 0.8}), s));
  CHECK(rejection_distribution(SimplexVector({0.2, 0.8}), s) == s);
  const SimplexVector p({0.3, 0.7});
  CHECK(rejection_distribution(p, s) == p);
}

TEST_CASE("accept probability") {
  const FeedbackGraph loops = build_graph(graph_kind::SelfLoopsOnly{3}, 0);
  const SimplexVector s({0.2, 0.4, 0.4});
  const SimplexVector q({0.3, 0.3, 0.4});
  CHECK(accept_probability(s, q, loops, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(accept_probability(s, q, loops, 2) == doctest::Approx(0.5));
  const FeedbackGraph complete = build_graph(graph_kind::Complete{3}, 0);
  CHECK(accept_probability(s, q, complete, 1) == doctest::Approx(0.5));
}

TEST_CASE("accept probability stays in [0, 1] when the check passes") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const int k = 2 + static_cast<int>(rng.below(8));
    const FeedbackGraph g =
        FeedbackGraph::from_out_neighbors(random_digraph(k, rng.uniform(), true, rng));
    const SimplexVector s(random_simplex_point(k, 1e-3, rng));
    const SimplexVector p(random_simplex_point(k, 1e-3, rng));
    const SimplexVector q = rejection_distribution(p, s);
    for (Arm a = 0; a < k; ++a) {
      const double ratio = neighborhood_mass(s.weights(), a, g) /
                           (2.0 * neighborhood_mass(q.weights(), a, g));
      REQUIRE(ratio <= 1.0 + 1e-12);
      REQUIRE(accept_probability(s, q, g, a) == doctest::Approx(ratio));
    }
  }
}

TEST_CASE("first epoch accumulates w_hat from uniform play") {
  auto g = make_graph(graph_kind::ErdosRenyi{6, 0.4});
  UnknownDistLearner learner(g, 3, 64, manual(8, 0.05, 0.1));
  const std::vector<Context> contexts = {0, 1, 2, 0, 1, 2, 0, 1};
  Rng rng(4);
  const auto records = learner.run_first_epoch(contexts, rng);
  CHECK(records.size() == 8);
  for (const PlayRecord& r : records) {
    for (double x : r.q) CHECK(x == doctest::Approx(1.0 / 6.0));
  }
  for (Arm a = 0; a < 6; ++a) {
    const double expected = g->in_neighbors(a).size() / (2.0 * 6.0);
    CHECK(learner.state().w_hat_next[a] == doctest::Approx(expected));
  }
  CHECK(learner.next_round() == 9);
  CHECK_THROWS_AS(learner.run_first_epoch(contexts, rng), InvariantViolation);
}

TEST_CASE("end_epoch promotes snapshots and importances") {
  auto g = make_graph(graph_kind::DisjointCliques{{2, 2}});
  UnknownDistLearner learner(g, 2, 32, manual(8, 0.05, 0.1));
  const std::vector<Context> contexts(8, 0);
  Rng rng(5);
  learner.run_first_epoch(contexts, rng);
  const auto w_next = learner.state().w_hat_next;
  const auto next = learner.state().next_snapshot;
  learner.end_epoch();
  CHECK(learner.state().epoch == 2);
  CHECK(learner.state().w_hat == w_next);
  CHECK(learner.state().snapshot == next);
  for (double x : learner.state().w_hat_next) CHECK(x == 0.0);
  CHECK(learner.state().rounds_in_epoch == 0);
}

TEST_CASE("step_pair enforces the pairing schedule") {
  auto g = make_graph(graph_kind::Complete{3});
  const LossOracle o = stochastic_gap(1, 3, gap_means(1, 3, 0.4, 0.2, 1), 2);
  UnknownDistLearner learner(g, 1, 16, manual(4, 0.05, 0.1));
  Rng rng(6);
  CHECK_THROWS_AS(learner.step_pair(1, 0, 0, rng, o), InvariantViolation);
  const std::vector<Context> contexts(4, 0);
  learner.run_first_epoch(contexts, rng);
  learner.end_epoch();
  CHECK_THROWS_AS(learner.step_pair(6, 0, 0, rng, o), InvariantViolation);
  const PairOutcome pair = learner.step_pair(5, 0, 0, rng, o);
  CHECK(pair.rounds[0].t == 5);
  CHECK(pair.rounds[1].t == 6);
  CHECK(learner.next_round() == 7);
}

TEST_CASE("pair increments have the expected conditional mean") {
  const UnknownFixture fx = unknown_fixture(31, 3);
  const MomentEstimate est = unknown_pair_replays(fx, 40000, 32);
  const int k = fx.graph->num_arms();
  const int m = fx.nu.num_contexts();
  const auto& st = fx.learner.state();
  const std::vector<double> w = exact_importance(*fx.graph, fx.nu, st.snapshot);
  const Round t = fx.learner.next_round();
  const double gamma = fx.learner.params().gamma;
  int failures = 0;
  for (Arm a = 0; a < k; ++a) {
    failures += !within_stderr(est.mean[a], est.stderr_[a], w[a], 4.0);
    for (Context c = 0; c < m; ++c) {
      const double pair_loss = fx.oracle.loss(t, c, a) + fx.oracle.loss(t + 1, c, a);
      const double target = pair_loss * w[a] / (st.w_hat[a] + 1.5 * gamma);
      const std::size_t i = k + static_cast<std::size_t>(c) * k + a;
      failures += !within_stderr(est.mean[i], est.stderr_[i], target, 4.0);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("a full run plays T/L epochs") {
  RunConfig cfg;
  cfg.graph = graph_kind::DisjointCliques{{2, 2}};
  cfg.num_contexts = 2;
  cfg.horizon = 512;
  cfg.algorithms = {Algorithm::Unknown};
  cfg.params.manual = true;
  cfg.params.epoch_len = 32;
  cfg.params.gamma = 0.05;
  cfg.params.eta = 0.05;
  cfg.seed = 9;
  const Experiment exp = prepare(cfg);
  const ReplicateResult r = run_replicate(exp, Algorithm::Unknown, 0);
  CHECK(r.trace.rounds.size() == 512);
  // Diagnostics cover the epochs that produce estimates, 2 through T/L.
  REQUIRE(r.trace.epochs.size() == 512 / 32 - 1);
  CHECK(r.trace.epochs.front().epoch == 2);
  CHECK(r.trace.epochs.back().epoch == 512 / 32);
  for (std::size_t i = 0; i < r.trace.rounds.size(); ++i) {
    CHECK(r.trace.rounds[i].t == static_cast<Round>(i + 1));
  }
}

TEST_CASE("rounds that fail the check play the snapshot") {
  RunConfig cfg;
  cfg.graph = graph_kind::SelfLoopsOnly{4};
  cfg.num_contexts = 2;
  cfg.horizon = 2048;
  cfg.algorithms = {Algorithm::Unknown};
  cfg.params.manual = true;
  cfg.params.epoch_len = 64;
  cfg.params.gamma = 0.01;
  cfg.params.eta = 0.5;
  cfg.seed = 10;
  const Experiment exp = prepare(cfg);
  const ReplicateResult r = run_replicate(exp, Algorithm::Unknown, 0);
  int snapshot_rounds = 0;
  for (const RoundEntry& e : r.trace.rounds) {
    REQUIRE(e.q.size() == 4);
    double total = 0.0;
    for (double x : e.q) total += x;
    REQUIRE(total == doctest::Approx(1.0));
    snapshot_rounds += e.used_snapshot;
  }
  // A large eta drives p far from the lagged snapshot.
  CHECK(snapshot_rounds > 0);
  CHECK(r.report.rejection_rounds == snapshot_rounds);
}

}  // namespace
}  // namespace crossgraph
