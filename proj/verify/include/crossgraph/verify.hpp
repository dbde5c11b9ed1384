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
#include <ostream>
#include <string>
#include <vector>

#include "crossgraph/algo_known.hpp"
#include "crossgraph/algo_unknown.hpp"
#include "crossgraph/baselines.hpp"
#include "crossgraph/harness.hpp"
#include "crossgraph/oracles.hpp"

namespace crossgraph {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::string format_result(const CheckResult& r);

// Digests of every replicate trace produced by the acceptance runs, kept so
// the determinism check can rerun the same configs and compare bytes.
struct TraceRecord {
  std::string label;
  RunConfig config;
  Algorithm algorithm;
  std::vector<std::uint64_t> digests;
};
using TraceLog = std::vector<TraceRecord>;

// Per-replicate outcome of an acceptance run.
struct Measured {
  Summary regret;                 // expected-form regret
  double rejection_fraction = 0.0;
  std::vector<EpochDiagnostics> epochs;  // all replicates, in order
};

// Runs every replicate with full traces, records their digests in `log`
// (when given) and summarizes the expected-form regret.
Measured measure(const std::string& label, const RunConfig& config,
                 Algorithm algo, TraceLog* log,
                 Execution exec = Execution::Parallel);

// Configuration shared by the scaling criteria: K = 16 as four cliques of
// four, M = 8, stochastic gap 0.2, tuned_scale 0.02, 20 replicates,
// T = 2^14.
RunConfig scaling_base();

// Frozen states used by the Monte Carlo checks.
struct KnownFixture {
  std::shared_ptr<const FeedbackGraph> graph;
  ContextDistribution nu = ContextDistribution::uniform(1);
  KnownDistLearner learner;
  LossOracle oracle;
  Round t;  // round to replay
};
KnownFixture known_fixture(const GraphSpec& graph, std::uint64_t seed);

struct UnknownFixture {
  std::shared_ptr<const FeedbackGraph> graph;
  ContextDistribution nu = ContextDistribution::uniform(1);
  UnknownDistLearner learner;
  LossOracle oracle;
};
// Learner frozen at the start of epoch 4 (snapshots no longer uniform);
// `pairs_into_epoch` pairs of epoch 4 are then played.
UnknownFixture unknown_fixture(std::uint64_t seed, int pairs_into_epoch);

// Monte Carlo of one-round loss estimates for every (c, a), [c * K + a].
MomentEstimate known_estimates(const KnownFixture& fx, long long replays,
                               std::uint64_t seed,
                               Execution exec = Execution::Parallel);
// Indicator of (A_{t_l} -> a, S = 1) per pair, [a], followed by the
// per-pair increment of cum[c][a], [K + c * K + a].
MomentEstimate unknown_pair_replays(const UnknownFixture& fx, long long replays,
                                    std::uint64_t seed,
                                    Execution exec = Execution::Parallel);
// w_hat_{e+1}(a) after replaying the rest of the current epoch.
MomentEstimate w_hat_replays(const UnknownFixture& fx, long long replays,
                             std::uint64_t seed,
                             Execution exec = Execution::Parallel);
// Baseline estimate of l_{t,c}(a) from a frozen per-context state, [a],
// for a fixed context.
MomentEstimate baseline_estimates(const BaselineLearner& learner,
                                  const LossOracle& oracle, Round t, Context c,
                                  long long replays, std::uint64_t seed,
                                  Execution exec = Execution::Parallel);

// Acceptance criteria.
CheckResult check_known_unbiased();
CheckResult check_used_feedback();
CheckResult check_w_hat_unbiased();
CheckResult check_concentration_events(TraceLog* log);
CheckResult check_rejection_inactivity(TraceLog* log);
CheckResult check_horizon_scaling(TraceLog* log);
CheckResult check_context_independence(TraceLog* log);
CheckResult check_alpha_scaling(TraceLog* log);
CheckResult check_graph_inverse();
CheckResult check_independence_oracle();
CheckResult check_determinism(const TraceLog& log);

// Small configs whose traces feed the determinism check at quick level.
void record_quick_traces(TraceLog* log);

// Runs the criteria for `level` (quick: 1, 2, 3, 9, 10, 11 on small
// configs; full: all eleven), printing one line per criterion as it
// finishes. True iff every check passed.
bool run_verification(VerifyLevel level, std::ostream& out);
std::vector<CheckResult> run_checks(VerifyLevel level, std::ostream* out);

}  // namespace crossgraph
