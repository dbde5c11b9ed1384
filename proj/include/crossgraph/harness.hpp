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
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "crossgraph/algo_unknown.hpp"
#include "crossgraph/baselines.hpp"
#include "crossgraph/environment.hpp"
#include "crossgraph/graph.hpp"

namespace crossgraph {

enum class Algorithm { Known, Unknown, PerContextExp3G, PooledExp3G, Uniform };

std::string to_string(Algorithm algo);
Algorithm parse_algorithm(const std::string& name);

enum class OracleKind { StochasticGap, AdversarialShift, Auction, TableCsv, TableBinary };

struct OracleSpec {
  OracleKind kind = OracleKind::StochasticGap;
  double base = 0.4;
  double gap = 0.2;
  std::filesystem::path table_path;  // TableCsv / TableBinary
  std::filesystem::path bids_path;   // Auction; empty = random bids
};

enum class EpochLenPolicy {
  Exact,   // T must be a multiple of the scheduled L
  Divisor  // L snapped to the nearest even divisor of T
};

struct AlgoParams {
  bool manual = false;
  // Known learner and baselines (auto): scale on sqrt(ln K / (alpha T)).
  double eta_scale = 1.0;
  double gamma_ix_scale = 1.0;
  // Epoch learner (auto).
  double tuned_scale = 0.02;
  std::optional<double> iota;
  EpochLenPolicy epoch_policy = EpochLenPolicy::Exact;
  // Manual values.
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<double> gamma_ix;
  std::optional<int> epoch_len;
};

struct DiagnosticToggles {
  bool epoch = false;           // per-epoch concentration diagnostics
  int graph_inverse_every = 0;  // known learner: check every n rounds (0 = off)
};

struct RunConfig {
  GraphSpec graph = graph_kind::Complete{2};
  OracleSpec oracle;
  int num_contexts = 1;
  std::vector<double> nu;  // empty = uniform
  Round horizon = 0;
  std::vector<Algorithm> algorithms{Algorithm::Unknown};
  AlgoParams params;
  std::uint64_t seed = 0;
  int replicates = 1;
  DiagnosticToggles diagnostics;
  bool write_trace = false;
  int csv_points = 256;  // cumulative-regret samples per replicate in CSV
};

// Everything derived from a RunConfig that is shared by all replicates.
struct Experiment {
  RunConfig config;
  std::shared_ptr<const FeedbackGraph> graph;
  ContextDistribution nu = ContextDistribution::uniform(1);
  std::vector<double> gap_means;          // StochasticGap
  std::shared_ptr<const LossOracle> fixed_oracle;  // Table / Auction
};

// Builds the graph and fixed oracle parts; validates strong observability,
// self-loops and the epoch structure for the epoch learner.
Experiment prepare(const RunConfig& config);

ParamSchedule resolve_schedule(const Experiment& exp);
double resolve_known_eta(const Experiment& exp);
BaselineSpec resolve_baseline(const Experiment& exp, BaselineKind kind);
LossOracle make_oracle(const Experiment& exp, int replicate);
std::uint64_t replicate_seed(std::uint64_t master, int replicate);

struct RoundEntry {
  Round t = 0;
  Context context = 0;
  Arm arm = 0;
  bool used_snapshot = false;
  std::vector<double> q;
  std::uint64_t state_digest = 0;
};

struct EpochDiagnostics {
  int epoch = 0;
  std::vector<double> w_hat;
  std::vector<double> w_exact;  // E_c[s_{e,c}(N_in(a))] / 2
  std::uint64_t snapshot_digest = 0;
  bool freq_event = false;      // F_e
  bool bounded_event = false;   // L_e
  bool all_events = false;      // Q so far
  double beta_min = 0.0;
  double beta_max = 0.0;
  double max_pseudo_sum = 0.0;  // max_{c,a} sum of pseudo-estimates
  double pseudo_tv_max = 0.0;   // max TV(p_t, counterfactual p~_t)
  double graph_inverse_lhs = 0.0;
  double graph_inverse_bound = 0.0;
  int rejection_rounds = 0;
  int used_feedback = 0;        // accepted (arm, pair) observations
};

struct Trace {
  Algorithm algorithm = Algorithm::Uniform;
  int replicate = 0;
  std::uint64_t seed = 0;
  int num_arms = 0;
  int num_contexts = 0;
  Round horizon = 0;
  std::vector<RoundEntry> rounds;
  std::vector<EpochDiagnostics> epochs;
  std::vector<Arm> best_policy;
};

struct RegretReport {
  double expected = 0.0;  // sum_t <q_t - pi*, l_t>
  double realized = 0.0;  // sum_t l_t(A_t) - l_t(pi*)
  std::vector<double> per_context_expected;
  std::vector<Round> curve_t;
  std::vector<double> curve_expected;
  std::vector<double> curve_realized;
  Round rejection_rounds = 0;
};

struct ReplicateResult {
  Trace trace;
  RegretReport report;
};

// argmin_a sum_{t : c_t = c} l_{t,c}(a), lowest index on ties, arm 0 for
// contexts that never occur.
std::vector<Arm> best_policy(const LossOracle& oracle,
                             std::span<const Context> contexts, Round horizon);

std::vector<Context> draw_contexts(const ContextDistribution& nu, Round horizon,
                                   std::uint64_t seed);

// One replicate of one algorithm. Deterministic in (experiment, algo,
// replicate). Learner invariant violations propagate as InvariantViolation.
ReplicateResult run_replicate(const Experiment& exp, Algorithm algo,
                              int replicate, bool keep_rounds = true);

// Pure pieces of the epoch diagnostics.
std::vector<double> exact_importance(const FeedbackGraph& graph,
                                     const ContextDistribution& nu,
                                     std::span<const SimplexVector> snapshot);
bool frequency_event(std::span<const double> w_hat, std::span<const double> w,
                     double iota, int epoch_len);
// beta_e(a) = (w + gamma) / (w_hat + 3 gamma / 2); returns {min, max}.
std::pair<double, double> beta_range(std::span<const double> w_hat,
                                     std::span<const double> w, double gamma);
double graph_inverse_bound(int alpha, int num_arms, double eps);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;
  int n = 0;
};
Summary summarize(std::span<const double> values);

enum class Execution { Serial, Parallel };

// Replicates [0, n). The parallel path distributes replicates over OpenMP
// threads; results are stored by replicate index, so both paths return
// identical vectors.
std::vector<ReplicateResult> run_replicates(const Experiment& exp,
                                            Algorithm algo, int n,
                                            Execution exec,
                                            bool keep_rounds = false);

struct AlgorithmReport {
  Algorithm algorithm;
  std::vector<RegretReport> replicates;
  Summary expected;
  Summary realized;
};

struct RunOutput {
  std::vector<AlgorithmReport> algorithms;
  std::vector<Trace> traces;  // filled when config.write_trace
};

RunOutput run(const RunConfig& config, Execution exec = Execution::Parallel);

struct ScalingFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
};

// OLS of log(y) on log(x). Needs >= 3 points with positive coordinates.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> points);

enum class SweepAxis { Horizon, Contexts, Alpha };
SweepAxis parse_axis(const std::string& name);
std::string to_string(SweepAxis axis);

// Config for one sweep value: T replaces the horizon, M the context count
// (nu reset to uniform), alpha the graph (disjoint cliques of size K/alpha).
RunConfig apply_axis(const RunConfig& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  Algorithm algorithm;
  Summary expected;
  Summary realized;
  double rejection_fraction = 0.0;
};

struct SweepResult {
  SweepAxis axis;
  std::vector<SweepRow> rows;
  // Per algorithm: log-log slope (T and alpha axes) or last/first ratio
  // (M axis).
  std::vector<std::pair<Algorithm, ScalingFit>> slopes;
  std::vector<std::pair<Algorithm, double>> ratios;
  std::vector<std::string> notes;
};

SweepResult sweep(const RunConfig& base, SweepAxis axis,
                  std::span<const double> values,
                  Execution exec = Execution::Parallel);

// Newline-delimited JSON: one header record, one record per round, one per
// epoch (epoch learner with diagnostics), one summary record.
void write_trace(const Trace& trace, const RegretReport& report,
                 std::ostream& out);
std::string serialize_trace(const Trace& trace, const RegretReport& report);
std::uint64_t fnv1a(std::string_view bytes);

// Long-format CSV: algo,replicate,t,cum_regret_expected,cum_regret_realized.
void write_regret_csv(const RunOutput& output, std::ostream& out);
void write_report_json(const RunConfig& config, const RunOutput& output,
                       std::ostream& out);
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_sweep_json(const SweepResult& result, std::ostream& out);

}  // namespace crossgraph
