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
#include <numeric>
#include <sstream>

#include "crossgraph/verify.hpp"
#include "doctest.h"

namespace crossgraph {
namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.graph = graph_kind::DisjointCliques{{2, 2}};
  cfg.num_contexts = 3;
  cfg.horizon = 1024;
  cfg.algorithms = {Algorithm::Known, Algorithm::Unknown, Algorithm::PerContextExp3G,
                    Algorithm::PooledExp3G, Algorithm::Uniform};
  cfg.params.epoch_policy = EpochLenPolicy::Divisor;
  cfg.seed = 123;
  cfg.replicates = 3;
  return cfg;
}

TEST_CASE("algorithm names round trip") {
  for (Algorithm a : {Algorithm::Known, Algorithm::Unknown, Algorithm::PerContextExp3G,
                      Algorithm::PooledExp3G, Algorithm::Uniform}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK_THROWS_AS(parse_algorithm("exp4"), std::invalid_argument);
}

TEST_CASE("best policy per context") {
  // Context 0 favours arm 1, context 1 favours arm 0.
  std::vector<double> data;
  for (Round t = 1; t <= 4; ++t) {
    data.insert(data.end(), {0.9, 0.1, 0.5});
    data.insert(data.end(), {0.0, 1.0, 1.0});
  }
  const LossOracle o = table_oracle(2, 3, 4, data);
  const std::vector<Context> contexts = {0, 1, 0, 1};
  CHECK(best_policy(o, contexts, 4) == std::vector<Arm>{1, 0});
  // Unseen contexts default to arm 0.
  const std::vector<Context> only_zero = {0, 0, 0, 0};
  CHECK(best_policy(o, only_zero, 4) == std::vector<Arm>{1, 0});
}

TEST_CASE("an empty horizon gives zero regret") {
  RunConfig cfg = small_config();
  cfg.horizon = 0;
  cfg.algorithms = {Algorithm::Known, Algorithm::Uniform};
  const RunOutput out = run(cfg);
  for (const AlgorithmReport& r : out.algorithms) {
    CHECK(r.expected.mean == 0.0);
    CHECK(r.realized.mean == 0.0);
  }
}

TEST_CASE("uniform regret is T times the mean gap") {
  RunConfig cfg;
  cfg.graph = graph_kind::Complete{4};
  cfg.num_contexts = 2;
  cfg.horizon = 20000;
  cfg.algorithms = {Algorithm::Uniform};
  cfg.oracle.base = 0.4;
  cfg.oracle.gap = 0.2;
  cfg.seed = 5;
  const Experiment exp = prepare(cfg);
  const ReplicateResult r = run_replicate(exp, Algorithm::Uniform, 0, false);
  double gap = 0.0;
  for (Context c = 0; c < 2; ++c) {
    const auto row = exp.gap_means.begin() + c * 4;
    const double mean = std::accumulate(row, row + 4, 0.0) / 4.0;
    gap += 0.5 * (mean - *std::min_element(row, row + 4));
  }
  CHECK(gap == doctest::Approx(0.75 * 0.2));
  CHECK(std::abs(r.report.expected - cfg.horizon * gap) < 0.05 * cfg.horizon * gap);
}

TEST_CASE("per-context regret sums to the total") {
  const Experiment exp = prepare(small_config());
  for (Algorithm a : exp.config.algorithms) {
    const ReplicateResult r = run_replicate(exp, a, 1, false);
    const double total = std::accumulate(r.report.per_context_expected.begin(),
                                         r.report.per_context_expected.end(), 0.0);
    CHECK(total == doctest::Approx(r.report.expected).epsilon(1e-9));
  }
}

TEST_CASE("with one context per-context and pooled baselines coincide") {
  RunConfig cfg = small_config();
  cfg.num_contexts = 1;
  const Experiment exp = prepare(cfg);
  const ReplicateResult pc = run_replicate(exp, Algorithm::PerContextExp3G, 0);
  const ReplicateResult pooled = run_replicate(exp, Algorithm::PooledExp3G, 0);
  REQUIRE(pc.trace.rounds.size() == pooled.trace.rounds.size());
  for (std::size_t i = 0; i < pc.trace.rounds.size(); ++i) {
    REQUIRE(pc.trace.rounds[i].arm == pooled.trace.rounds[i].arm);
    REQUIRE(pc.trace.rounds[i].q == pooled.trace.rounds[i].q);
  }
  CHECK(pc.report.expected == pooled.report.expected);
}

TEST_CASE("algorithms under one seed see the same contexts") {
  const Experiment exp = prepare(small_config());
  const ReplicateResult a = run_replicate(exp, Algorithm::Known, 2);
  const ReplicateResult b = run_replicate(exp, Algorithm::Uniform, 2);
  for (std::size_t i = 0; i < a.trace.rounds.size(); ++i) {
    REQUIRE(a.trace.rounds[i].context == b.trace.rounds[i].context);
  }
  CHECK(a.trace.best_policy == b.trace.best_policy);
}

TEST_CASE("replicates are reproducible") {
  const Experiment exp = prepare(small_config());
  for (Algorithm a : exp.config.algorithms) {
    const ReplicateResult x = run_replicate(exp, a, 1);
    const ReplicateResult y = run_replicate(exp, a, 1);
    CHECK(serialize_trace(x.trace, x.report) == serialize_trace(y.trace, y.report));
  }
}

TEST_CASE("serial and parallel replicates are identical") {
  const Experiment exp = prepare(small_config());
  for (Algorithm a : exp.config.algorithms) {
    const auto serial = run_replicates(exp, a, 4, Execution::Serial, true);
    const auto parallel = run_replicates(exp, a, 4, Execution::Parallel, true);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serialize_trace(serial[i].trace, serial[i].report) ==
            serialize_trace(parallel[i].trace, parallel[i].report));
    }
  }
}

TEST_CASE("serial and parallel monte carlo are identical") {
  const auto kernel = [](Rng& rng, std::span<double> out) {
    out[0] = rng.uniform();
    out[1] = rng.bernoulli(0.3);
  };
  const MomentEstimate s = monte_carlo(5000, 2, 7, kernel, Execution::Serial);
  const MomentEstimate p = monte_carlo(5000, 2, 7, kernel, Execution::Parallel);
  CHECK(s.mean == p.mean);
  CHECK(s.stderr_ == p.stderr_);
  CHECK(s.n == 5000);
  CHECK(within_stderr(s.mean[0], s.stderr_[0], 0.5));
  CHECK(within_stderr(s.mean[1], s.stderr_[1], 0.3));
}

TEST_CASE("serial and parallel enumeration are identical") {
  Rng rng(3);
  std::vector<std::vector<std::vector<Arm>>> graphs;
  for (int i = 0; i < 50; ++i) {
    graphs.push_back(random_digraph(1 + static_cast<int>(rng.below(12)), rng.uniform(), true, rng));
  }
  CHECK(enumerate_independence_numbers(graphs, Execution::Serial) ==
        enumerate_independence_numbers(graphs, Execution::Parallel));
}

TEST_CASE("the graph-inverse diagnostic runs inside the known learner") {
  RunConfig cfg = small_config();
  cfg.algorithms = {Algorithm::Known};
  cfg.diagnostics.graph_inverse_every = 1;
  CHECK_NOTHROW(run(cfg));
}

TEST_CASE("epoch diagnostics are consistent") {
  RunConfig cfg = small_config();
  cfg.algorithms = {Algorithm::Unknown};
  cfg.diagnostics.epoch = true;
  const Experiment exp = prepare(cfg);
  const ReplicateResult r = run_replicate(exp, Algorithm::Unknown, 0, false);
  REQUIRE_FALSE(r.trace.epochs.empty());
  bool all = true;
  int rejections = 0;
  for (const EpochDiagnostics& e : r.trace.epochs) {
    all = all && e.freq_event && e.bounded_event;
    CHECK(e.all_events == all);
    CHECK(e.graph_inverse_lhs <= e.graph_inverse_bound);
    rejections += e.rejection_rounds;
  }
  CHECK(rejections == r.report.rejection_rounds);
}

TEST_CASE("frequency event and beta range") {
  const std::vector<double> w = {0.2, 0.4};
  CHECK(frequency_event(w, w, 6.0, 100));
  const std::vector<double> far = {0.9, 0.4};
  CHECK_FALSE(frequency_event(far, w, 6.0, 100));
  const auto [lo, hi] = beta_range(w, w, 0.1);
  CHECK(lo == doctest::Approx(0.3 / 0.35));
  CHECK(hi == doctest::Approx(0.5 / 0.55));
}

TEST_CASE("exact importance is half the mixed snapshot mass") {
  const FeedbackGraph g = build_graph(graph_kind::DisjointCliques{{2, 2}}, 0);
  const ContextDistribution nu({0.5, 0.5});
  const std::vector<SimplexVector> snap = {SimplexVector({0.1, 0.2, 0.3, 0.4}),
                                           SimplexVector::uniform(4)};
  const auto w = exact_importance(g, nu, snap);
  CHECK(w[0] == doctest::Approx(0.5 * (0.5 * 0.3 + 0.5 * 0.5)));
  CHECK(w[3] == doctest::Approx(0.5 * (0.5 * 0.7 + 0.5 * 0.5)));
}

TEST_CASE("scaling fit") {
  std::vector<std::pair<double, double>> sqrt_pts, lin_pts, noisy;
  Rng rng(4);
  for (double x : {100.0, 400.0, 1600.0, 6400.0}) {
    sqrt_pts.emplace_back(x, 7.0 * std::sqrt(x));
    lin_pts.emplace_back(x, 3.0 * x);
    noisy.emplace_back(x, std::sqrt(x) * (1.0 + 0.05 * (rng.uniform() - 0.5)));
  }
  CHECK(fit_scaling(sqrt_pts).slope == doctest::Approx(0.5));
  CHECK(fit_scaling(sqrt_pts).intercept == doctest::Approx(std::log(7.0)));
  CHECK(fit_scaling(lin_pts).slope == doctest::Approx(1.0));
  const double s = fit_scaling(noisy).slope;
  CHECK(s >= 0.4);
  CHECK(s <= 0.6);
  const std::vector<std::pair<double, double>> two = {{1.0, 1.0}, {2.0, 2.0}};
  CHECK_THROWS_AS(fit_scaling(two), std::invalid_argument);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const Summary s = summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.n == 4);
}

TEST_CASE("sweep over the context axis reports ratios") {
  RunConfig cfg = small_config();
  cfg.horizon = 512;
  cfg.algorithms = {Algorithm::Uniform};
  const std::vector<double> values = {1, 2, 4};
  const SweepResult r = sweep(cfg, SweepAxis::Contexts, values);
  CHECK(r.rows.size() == 3);
  REQUIRE(r.ratios.size() == 1);
  std::ostringstream csv;
  write_sweep_csv(r, csv);
  CHECK(csv.str().find("uniform") != std::string::npos);
}

TEST_CASE("alpha axis rebuilds cliques") {
  RunConfig cfg;
  cfg.graph = graph_kind::Complete{16};
  const RunConfig a4 = apply_axis(cfg, SweepAxis::Alpha, 4);
  CHECK(std::get<graph_kind::DisjointCliques>(a4.graph).sizes == std::vector<int>(4, 4));
  CHECK_THROWS_AS(apply_axis(cfg, SweepAxis::Alpha, 3), std::invalid_argument);
}

TEST_CASE("reports are well formed") {
  RunConfig cfg = small_config();
  cfg.horizon = 256;
  cfg.write_trace = true;
  const RunOutput out = run(cfg);
  CHECK(out.traces.size() == cfg.algorithms.size() * cfg.replicates);
  std::ostringstream csv, json;
  write_regret_csv(out, csv);
  write_report_json(cfg, out, json);
  CHECK(csv.str().rfind("algo,replicate,t,cum_regret_expected,cum_regret_realized", 0) == 0);
  CHECK(json.str().find("\"per_replicate\"") != std::string::npos);
}

}  // namespace
}  // namespace crossgraph
