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

#include "crossgraph/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "crossgraph/algo_known.hpp"
#include "crossgraph/algo_unknown.hpp"

namespace crossgraph {

namespace {

int graph_arms(const GraphSpec& spec) {
  struct Visitor {
    int operator()(const graph_kind::Complete& s) const { return s.num_arms; }
    int operator()(const graph_kind::SelfLoopsOnly& s) const { return s.num_arms; }
    int operator()(const graph_kind::DisjointCliques& s) const {
      int k = 0;
      for (int size : s.sizes) k += size;
      return k;
    }
    int operator()(const graph_kind::ErdosRenyi& s) const { return s.num_arms; }
    int operator()(const graph_kind::OrderedTriangular& s) const {
      return s.num_arms;
    }
    int operator()(const graph_kind::Custom& s) const {
      return load_adjacency(s.adjacency_file).num_arms();
    }
  };
  return std::visit(Visitor{}, spec);
}

std::uint64_t digest_doubles(std::uint64_t h, std::span<const double> xs) {
  for (double x : xs) {
    h ^= std::bit_cast<std::uint64_t>(x);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t digest_state(const std::vector<CumulativeLoss>& cum) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : cum) h = digest_doubles(h, c.totals());
  return h;
}

std::uint64_t digest_snapshot(std::span<const SimplexVector> snapshot) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : snapshot) h = digest_doubles(h, s.weights());
  return h;
}

void append_double(std::string& out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  out.append(buf, ptr);
}

void append_hex(std::string& out, std::uint64_t x) {
  static constexpr char kDigits[] = "0123456789abcdef";
  char buf[16];
  for (int i = 15; i >= 0; --i) {
    buf[i] = kDigits[x & 0xF];
    x >>= 4;
  }
  out.append(buf, 16);
}

void append_array(std::string& out, std::span<const double> xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    append_double(out, xs[i]);
  }
  out += ']';
}

// Per-replicate regret accumulator; the comparator is known up front
// because contexts are drawn before play.
class RegretAccumulator {
 public:
  RegretAccumulator(const LossOracle& oracle, std::vector<Arm> best,
                    Round horizon, int csv_points)
      : oracle_(oracle), best_(std::move(best)), horizon_(horizon) {
    report_.per_context_expected.assign(oracle.num_contexts(), 0.0);
    stride_ = std::max<Round>(1, horizon / std::max(1, csv_points));
  }

  void add(Round t, Context c, Arm played, std::span<const double> q) {
    const Arm star = best_[c];
    const double star_loss = oracle_.loss(t, c, star);
    double mix = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) {
      if (q[a] != 0.0) mix += q[a] * oracle_.loss(t, c, static_cast<Arm>(a));
    }
    const double expected = mix - star_loss;
    report_.expected += expected;
    report_.per_context_expected[c] += expected;
    report_.realized += oracle_.loss(t, c, played) - star_loss;
    if (t % stride_ == 0 || t == horizon_) {
      report_.curve_t.push_back(t);
      report_.curve_expected.push_back(report_.expected);
      report_.curve_realized.push_back(report_.realized);
    }
  }

  RegretReport& report() { return report_; }

 private:
  const LossOracle& oracle_;
  std::vector<Arm> best_;
  Round horizon_;
  Round stride_ = 1;
  RegretReport report_;
};

struct RunContext {
  const Experiment& exp;
  const LossOracle& oracle;
  std::span<const Context> contexts;
  Rng rng;
  RegretAccumulator regret;
  Trace& trace;
  bool keep_rounds;
};

void record_round(RunContext& run, Round t, Context c, Arm arm,
                  bool used_snapshot, std::span<const double> q,
                  std::uint64_t digest) {
  run.regret.add(t, c, arm, q);
  if (used_snapshot) ++run.regret.report().rejection_rounds;
  if (!run.keep_rounds) return;
  RoundEntry e;
  e.t = t;
  e.context = c;
  e.arm = arm;
  e.used_snapshot = used_snapshot;
  e.q.assign(q.begin(), q.end());
  e.state_digest = digest;
  run.trace.rounds.push_back(std::move(e));
}

void check_graph_inverse(const KnownDistLearner& learner, Round t) {
  const auto pbar = learner.mixture();
  const auto w = neighborhood_masses(pbar, learner.graph());
  double lhs = 0.0;
  double eps = 1.0;
  for (std::size_t a = 0; a < pbar.size(); ++a) {
    if (!(w[a] > 0.0)) throw InvariantViolation(t, "zero importance");
    lhs += pbar[a] / w[a];
    eps = std::min(eps, pbar[a]);
  }
  const double bound = graph_inverse_bound(learner.graph().alpha(),
                                           learner.num_arms(), eps);
  if (lhs > bound) {
    throw InvariantViolation(t, "graph-inverse sum " + std::to_string(lhs) +
                                    " exceeds bound " + std::to_string(bound));
  }
}

void run_known(RunContext& run) {
  const Experiment& exp = run.exp;
  KnownDistLearner learner(exp.graph, exp.nu, resolve_known_eta(exp));
  const int every = exp.config.diagnostics.graph_inverse_every;
  for (Round t = 1; t <= exp.config.horizon; ++t) {
    const Context c = run.contexts[t - 1];
    if (every > 0 && (t - 1) % every == 0) check_graph_inverse(learner, t);
    const std::uint64_t digest =
        run.keep_rounds ? digest_state(learner.cumulative()) : 0;
    const Arm arm = learner.act(t, c, run.rng);
    record_round(run, t, c, arm, false, learner.played_distribution(), digest);
    learner.update(reveal(run.oracle, *exp.graph, t, arm));
  }
}

void run_baseline(RunContext& run, BaselineKind kind) {
  const Experiment& exp = run.exp;
  BaselineLearner learner(exp.graph, exp.nu.num_contexts(),
                          resolve_baseline(exp, kind));
  for (Round t = 1; t <= exp.config.horizon; ++t) {
    const Context c = run.contexts[t - 1];
    const std::uint64_t digest =
        run.keep_rounds ? digest_state(learner.states()) : 0;
    const Arm arm = learner.act(t, c, run.rng);
    record_round(run, t, c, arm, false, learner.played_distribution(), digest);
    learner.update(reveal(run.oracle, *exp.graph, t, arm));
  }
}

// Tracks one epoch of the epoch learner with full knowledge of nu.
class EpochMonitor {
 public:
  EpochMonitor(const Experiment& exp, const ParamSchedule& params,
               bool counterfactual)
      : exp_(exp), params_(params), counterfactual_(counterfactual) {}

  void begin(const UnknownDistLearner& learner) {
    const EpochState& st = learner.state();
    const FeedbackGraph& g = *exp_.graph;
    const int k = g.num_arms();
    const int m = exp_.nu.num_contexts();
    cur_ = EpochDiagnostics{};
    cur_.epoch = st.epoch;
    cur_.w_hat = st.w_hat;
    cur_.w_exact = exact_importance(g, exp_.nu, st.snapshot);
    cur_.snapshot_digest = digest_snapshot(st.snapshot);
    cur_.freq_event = frequency_event(cur_.w_hat, cur_.w_exact, params_.iota,
                                      params_.epoch_len);
    std::tie(cur_.beta_min, cur_.beta_max) =
        beta_range(cur_.w_hat, cur_.w_exact, params_.gamma);
    pseudo_.assign(static_cast<std::size_t>(m) * k, 0.0);
    start_.clear();
    std::vector<double> pbar(k, 0.0);
    for (Context c = 0; c < m; ++c) {
      start_.push_back(learner.distribution(c));
      for (Arm a = 0; a < k; ++a) pbar[a] += exp_.nu[c] * start_.back()[a];
    }
    double eps = 1.0;
    for (Arm a = 0; a < k; ++a) {
      cur_.graph_inverse_lhs += pbar[a] / (cur_.w_exact[a] + params_.gamma);
      eps = std::min(eps, pbar[a]);
    }
    cur_.graph_inverse_bound = graph_inverse_bound(g.alpha(), k, eps);
  }

  void before_pair(const UnknownDistLearner& learner) {
    if (!counterfactual_) return;
    const int k = exp_.graph->num_arms();
    for (Context c = 0; c < exp_.nu.num_contexts(); ++c) {
      const SimplexVector p = learner.distribution(c);
      const SimplexVector tilde =
          tilt(start_[c],
               std::span<const double>(pseudo_).subspan(
                   static_cast<std::size_t>(c) * k, k),
               params_.eta);
      double tv = 0.0;
      for (Arm a = 0; a < k; ++a) tv += std::abs(p[a] - tilde[a]);
      cur_.pseudo_tv_max = std::max(cur_.pseudo_tv_max, tv / 2.0);
    }
  }

  void after_pair(const PairOutcome& out, const LossOracle& oracle) {
    const int k = exp_.graph->num_arms();
    const PlayRecord& est = out.rounds[out.loss_slot];
    for (const PlayRecord& r : out.rounds) cur_.rejection_rounds += r.used_snapshot;
    cur_.used_feedback += static_cast<int>(out.accepted.size());
    for (Arm a : out.accepted) {
      const double denom = cur_.w_exact[a] + params_.gamma;
      for (Context c = 0; c < exp_.nu.num_contexts(); ++c) {
        pseudo_[static_cast<std::size_t>(c) * k + a] +=
            2.0 * oracle.loss(est.t, c, a) / denom;
      }
    }
  }

  EpochDiagnostics finish() {
    cur_.max_pseudo_sum = pseudo_.empty()
                              ? 0.0
                              : *std::max_element(pseudo_.begin(), pseudo_.end());
    cur_.bounded_event = cur_.max_pseudo_sum <=
                         params_.epoch_len + params_.iota / params_.gamma;
    all_ = all_ && cur_.freq_event && cur_.bounded_event;
    cur_.all_events = all_;
    return cur_;
  }

 private:
  const Experiment& exp_;
  ParamSchedule params_;
  bool counterfactual_;
  EpochDiagnostics cur_;
  std::vector<double> pseudo_;
  std::vector<SimplexVector> start_;
  bool all_ = true;
};

void run_unknown(RunContext& run) {
  const Experiment& exp = run.exp;
  const Round horizon = exp.config.horizon;
  const ParamSchedule params = resolve_schedule(exp);
  UnknownDistLearner learner(exp.graph, exp.nu.num_contexts(), horizon, params);
  const int len = params.epoch_len;

  const std::uint64_t first_digest =
      run.keep_rounds ? digest_state(learner.state().cum) : 0;
  const auto first = learner.run_first_epoch(run.contexts.subspan(0, len), run.rng);
  for (const PlayRecord& r : first) {
    record_round(run, r.t, r.context, r.arm, r.used_snapshot, r.q, first_digest);
  }
  learner.end_epoch();

  EpochMonitor monitor(exp, params, exp.config.diagnostics.epoch);
  while (!learner.finished()) {
    monitor.begin(learner);
    for (int i = 0; i < len; i += 2) {
      const Round t = learner.next_round();
      monitor.before_pair(learner);
      const std::uint64_t digest =
          run.keep_rounds ? digest_state(learner.state().cum) : 0;
      const PairOutcome out = learner.step_pair(t, run.contexts[t - 1],
                                                run.contexts[t], run.rng,
                                                run.oracle);
      for (const PlayRecord& r : out.rounds) {
        record_round(run, r.t, r.context, r.arm, r.used_snapshot, r.q, digest);
      }
      monitor.after_pair(out, run.oracle);
    }
    run.trace.epochs.push_back(monitor.finish());
    learner.end_epoch();
  }
}

}  // namespace

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Known: return "known";
    case Algorithm::Unknown: return "unknown";
    case Algorithm::PerContextExp3G: return "per_context_exp3g";
    case Algorithm::PooledExp3G: return "pooled_exp3g";
    case Algorithm::Uniform: return "uniform";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::Known, Algorithm::Unknown,
                      Algorithm::PerContextExp3G, Algorithm::PooledExp3G,
                      Algorithm::Uniform}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::uint64_t replicate_seed(std::uint64_t master, int replicate) {
  return derive_seed(master, stream::kReplicate,
                     static_cast<std::uint64_t>(replicate));
}

Experiment prepare(const RunConfig& config) {
  if (config.horizon < 0) throw std::invalid_argument("T must be >= 0");
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (config.algorithms.empty()) throw std::invalid_argument("no algorithm selected");
  if (config.num_contexts < 1) throw std::invalid_argument("M must be >= 1");

  Experiment exp;
  exp.config = config;
  exp.graph = std::make_shared<const FeedbackGraph>(
      build_graph(config.graph, derive_seed(config.seed, stream::kGraph)));
  const FeedbackGraph& g = *exp.graph;
  if (!g.all_self_loops() || !g.strongly_observable()) {
    throw std::invalid_argument(
        "feedback graph must be strongly observable with a self-loop on every arm");
  }
  exp.nu = config.nu.empty() ? ContextDistribution::uniform(config.num_contexts)
                             : ContextDistribution(config.nu);
  if (exp.nu.num_contexts() != config.num_contexts) {
    throw std::invalid_argument("nu has " + std::to_string(exp.nu.num_contexts()) +
                                " entries but M = " +
                                std::to_string(config.num_contexts));
  }
  const int k = g.num_arms();
  const int m = config.num_contexts;
  const std::uint64_t structure_seed = derive_seed(config.seed, stream::kOracle);
  switch (config.oracle.kind) {
    case OracleKind::StochasticGap:
      exp.gap_means = gap_means(m, k, config.oracle.base, config.oracle.gap,
                                structure_seed);
      break;
    case OracleKind::AdversarialShift:
      if (!(config.oracle.base >= 0.0 && config.oracle.gap >= 0.0 &&
            config.oracle.base + config.oracle.gap <= 1.0)) {
        throw std::invalid_argument("adversarial_shift: need base + gap in [0,1]");
      }
      break;
    case OracleKind::Auction: {
      std::vector<double> values(m);
      for (int c = 0; c < m; ++c) values[c] = static_cast<double>(c + 1) / m;
      auto bids = config.oracle.bids_path.empty()
                      ? random_opposing_bids(config.horizon, structure_seed)
                      : load_opposing_bids_csv(config.oracle.bids_path);
      if (static_cast<Round>(bids.size()) < config.horizon) {
        throw std::invalid_argument("opposing-bid sequence shorter than T");
      }
      bids.resize(static_cast<std::size_t>(config.horizon));
      exp.fixed_oracle = std::make_shared<const LossOracle>(
          auction_losses(std::move(values), linear_grid(k), std::move(bids)));
      break;
    }
    case OracleKind::TableCsv:
    case OracleKind::TableBinary: {
      auto table = config.oracle.kind == OracleKind::TableCsv
                       ? load_table_csv(config.oracle.table_path)
                       : load_table_binary(config.oracle.table_path);
      if (table.num_contexts() != m || table.num_arms() != k) {
        throw std::invalid_argument("loss table shape does not match M and K");
      }
      if (*table.horizon() < config.horizon) {
        throw std::invalid_argument("loss table shorter than T");
      }
      exp.fixed_oracle = std::make_shared<const LossOracle>(std::move(table));
      break;
    }
  }
  const bool has_unknown =
      std::find(config.algorithms.begin(), config.algorithms.end(),
                Algorithm::Unknown) != config.algorithms.end();
  if (has_unknown && config.horizon > 0) resolve_schedule(exp);
  return exp;
}

ParamSchedule resolve_schedule(const Experiment& exp) {
  const RunConfig& cfg = exp.config;
  const AlgoParams& p = cfg.params;
  const int k = exp.graph->num_arms();
  ParamSchedule s;
  if (p.manual) {
    if (!p.epoch_len || !p.gamma || !p.eta) {
      throw std::invalid_argument(
          "manual parameters for the epoch learner need epoch_len, gamma, eta");
    }
    s.iota = p.iota ? *p.iota : default_iota(k, cfg.horizon);
    s.epoch_len = *p.epoch_len;
    s.gamma = *p.gamma;
    s.eta = *p.eta;
    s.tuned_scale = s.gamma * s.epoch_len / (16.0 * s.iota);
    if (s.epoch_len < 2 || s.epoch_len % 2 != 0) {
      throw std::invalid_argument("epoch_len must be even and >= 2");
    }
  } else {
    s = schedule_params(k, cfg.horizon, exp.graph->alpha(), p.tuned_scale,
                        p.iota);
    if (p.epoch_policy == EpochLenPolicy::Divisor) {
      s = with_epoch_len(s, snap_epoch_len(cfg.horizon, s.epoch_len));
    }
  }
  validate_horizon(cfg.horizon, s.epoch_len);
  return s;
}

double resolve_known_eta(const Experiment& exp) {
  const AlgoParams& p = exp.config.params;
  if (p.manual) {
    if (!p.eta) throw std::invalid_argument("manual parameters need eta");
    return *p.eta;
  }
  return default_known_eta(exp.graph->num_arms(), exp.graph->alpha(),
                           std::max<Round>(exp.config.horizon, 1), p.eta_scale);
}

BaselineSpec resolve_baseline(const Experiment& exp, BaselineKind kind) {
  const AlgoParams& p = exp.config.params;
  BaselineSpec spec = default_baseline(
      kind, exp.graph->num_arms(), exp.graph->alpha(),
      std::max<Round>(exp.config.horizon, 1), exp.nu, p.eta_scale);
  if (p.manual) {
    if (kind != BaselineKind::Uniform && (!p.eta || !p.gamma_ix)) {
      throw std::invalid_argument("manual baseline parameters need eta, gamma_ix");
    }
    std::fill(spec.eta.begin(), spec.eta.end(), p.eta.value_or(0.0));
    std::fill(spec.gamma_ix.begin(), spec.gamma_ix.end(), p.gamma_ix.value_or(0.0));
  } else if (p.gamma_ix_scale != p.eta_scale) {
    for (std::size_t i = 0; i < spec.gamma_ix.size(); ++i) {
      spec.gamma_ix[i] = spec.gamma_ix[i] / p.eta_scale * p.gamma_ix_scale;
    }
  }
  return spec;
}

LossOracle make_oracle(const Experiment& exp, int replicate) {
  const RunConfig& cfg = exp.config;
  if (exp.fixed_oracle) return *exp.fixed_oracle;
  const std::uint64_t coin_seed =
      derive_seed(replicate_seed(cfg.seed, replicate), stream::kOracle);
  const int k = exp.graph->num_arms();
  if (cfg.oracle.kind == OracleKind::AdversarialShift) {
    return adversarial_shift(cfg.num_contexts, k, std::max<Round>(cfg.horizon, 1),
                             cfg.oracle.base, cfg.oracle.gap, coin_seed);
  }
  return stochastic_gap(cfg.num_contexts, k, exp.gap_means, coin_seed);
}

std::vector<Arm> best_policy(const LossOracle& oracle,
                             std::span<const Context> contexts, Round horizon) {
  const int m = oracle.num_contexts();
  const int k = oracle.num_arms();
  if (static_cast<Round>(contexts.size()) < horizon) {
    throw std::invalid_argument("fewer contexts than rounds");
  }
  std::vector<double> totals(static_cast<std::size_t>(m) * k, 0.0);
  for (Round t = 1; t <= horizon; ++t) {
    const Context c = contexts[t - 1];
    for (Arm a = 0; a < k; ++a) {
      totals[static_cast<std::size_t>(c) * k + a] += oracle.loss(t, c, a);
    }
  }
  std::vector<Arm> best(m, 0);
  for (Context c = 0; c < m; ++c) {
    const auto row = totals.begin() + static_cast<std::ptrdiff_t>(c) * k;
    best[c] = static_cast<Arm>(std::min_element(row, row + k) - row);
  }
  return best;
}

std::vector<Context> draw_contexts(const ContextDistribution& nu, Round horizon,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Context> out(static_cast<std::size_t>(horizon));
  for (auto& c : out) c = sample_context(nu, rng);
  return out;
}

ReplicateResult run_replicate(const Experiment& exp, Algorithm algo,
                              int replicate, bool keep_rounds) {
  const RunConfig& cfg = exp.config;
  const std::uint64_t seed = replicate_seed(cfg.seed, replicate);
  const std::vector<Context> contexts =
      draw_contexts(exp.nu, cfg.horizon, derive_seed(seed, stream::kContexts));
  const LossOracle oracle = make_oracle(exp, replicate);

  ReplicateResult result;
  Trace& trace = result.trace;
  trace.algorithm = algo;
  trace.replicate = replicate;
  trace.seed = seed;
  trace.num_arms = exp.graph->num_arms();
  trace.num_contexts = cfg.num_contexts;
  trace.horizon = cfg.horizon;
  trace.best_policy = best_policy(oracle, contexts, cfg.horizon);
  if (keep_rounds) trace.rounds.reserve(static_cast<std::size_t>(cfg.horizon));

  RunContext run{exp,
                 oracle,
                 contexts,
                 Rng(derive_seed(seed, stream::kLearner)),
                 RegretAccumulator(oracle, trace.best_policy, cfg.horizon,
                                   cfg.csv_points),
                 trace,
                 keep_rounds};
  if (cfg.horizon > 0) {
    switch (algo) {
      case Algorithm::Known:
        run_known(run);
        break;
      case Algorithm::Unknown:
        run_unknown(run);
        break;
      case Algorithm::PerContextExp3G:
        run_baseline(run, BaselineKind::PerContextExp3G);
        break;
      case Algorithm::PooledExp3G:
        run_baseline(run, BaselineKind::PooledExp3G);
        break;
      case Algorithm::Uniform:
        run_baseline(run, BaselineKind::Uniform);
        break;
    }
  }
  result.report = std::move(run.regret.report());
  return result;
}

std::vector<double> exact_importance(const FeedbackGraph& graph,
                                     const ContextDistribution& nu,
                                     std::span<const SimplexVector> snapshot) {
  const int k = graph.num_arms();
  if (static_cast<int>(snapshot.size()) != nu.num_contexts()) {
    throw std::invalid_argument("one snapshot per context required");
  }
  std::vector<double> mix(k, 0.0);
  for (Context c = 0; c < nu.num_contexts(); ++c) {
    for (Arm a = 0; a < k; ++a) mix[a] += nu[c] * snapshot[c][a];
  }
  auto w = neighborhood_masses(mix, graph);
  for (double& x : w) x /= 2.0;
  return w;
}

bool frequency_event(std::span<const double> w_hat, std::span<const double> w,
                     double iota, int epoch_len) {
  for (std::size_t a = 0; a < w.size(); ++a) {
    const double radius =
        2.0 * std::max(std::sqrt(w[a] * iota / epoch_len), iota / epoch_len);
    if (std::abs(w_hat[a] - w[a]) > radius) return false;
  }
  return true;
}

std::pair<double, double> beta_range(std::span<const double> w_hat,
                                     std::span<const double> w, double gamma) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t a = 0; a < w.size(); ++a) {
    const double beta = (w[a] + gamma) / (w_hat[a] + 1.5 * gamma);
    lo = std::min(lo, beta);
    hi = std::max(hi, beta);
  }
  return {lo, hi};
}

double graph_inverse_bound(int alpha, int num_arms, double eps) {
  return 4.0 * alpha * std::log(4.0 * num_arms / (alpha * eps));
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  for (double v : values) s.mean += v;
  s.mean /= s.n;
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (s.n - 1));
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

std::vector<ReplicateResult> run_replicates(const Experiment& exp,
                                            Algorithm algo, int n,
                                            Execution exec, bool keep_rounds) {
  std::vector<ReplicateResult> results(static_cast<std::size_t>(n));
  if (exec == Execution::Serial) {
    for (int r = 0; r < n; ++r) {
      results[r] = run_replicate(exp, algo, r, keep_rounds);
    }
    return results;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < n; ++r) {
    try {
      results[r] = run_replicate(exp, algo, r, keep_rounds);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

RunOutput run(const RunConfig& config, Execution exec) {
  const Experiment exp = prepare(config);
  RunOutput out;
  for (Algorithm algo : config.algorithms) {
    auto results = run_replicates(exp, algo, config.replicates, exec,
                                  config.write_trace);
    AlgorithmReport rep;
    rep.algorithm = algo;
    std::vector<double> expected;
    std::vector<double> realized;
    for (auto& r : results) {
      expected.push_back(r.report.expected);
      realized.push_back(r.report.realized);
      rep.replicates.push_back(std::move(r.report));
      if (config.write_trace) out.traces.push_back(std::move(r.trace));
    }
    rep.expected = summarize(expected);
    rep.realized = summarize(realized);
    out.algorithms.push_back(std::move(rep));
  }
  return out;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "T") return SweepAxis::Horizon;
  if (name == "M") return SweepAxis::Contexts;
  if (name == "alpha") return SweepAxis::Alpha;
  throw std::invalid_argument("unknown sweep axis '" + name +
                              "' (expected T, M or alpha)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Horizon: return "T";
    case SweepAxis::Contexts: return "M";
    case SweepAxis::Alpha: return "alpha";
  }
  return "?";
}

RunConfig apply_axis(const RunConfig& base, SweepAxis axis, double value) {
  RunConfig cfg = base;
  const auto as_int = static_cast<long long>(std::llround(value));
  if (as_int < 1 || std::abs(value - static_cast<double>(as_int)) > 1e-9) {
    throw std::invalid_argument("sweep value " + std::to_string(value) +
                                " must be a positive integer");
  }
  switch (axis) {
    case SweepAxis::Horizon:
      cfg.horizon = as_int;
      break;
    case SweepAxis::Contexts:
      cfg.num_contexts = static_cast<int>(as_int);
      cfg.nu.clear();
      break;
    case SweepAxis::Alpha: {
      const int k = graph_arms(base.graph);
      if (k % as_int != 0) {
        throw std::invalid_argument("alpha sweep: alpha=" + std::to_string(as_int) +
                                    " does not divide K=" + std::to_string(k));
      }
      cfg.graph = graph_kind::DisjointCliques{
          std::vector<int>(static_cast<std::size_t>(as_int),
                           static_cast<int>(k / as_int))};
      break;
    }
  }
  return cfg;
}

SweepResult sweep(const RunConfig& base, SweepAxis axis,
                  std::span<const double> values, Execution exec) {
  if (values.empty()) throw std::invalid_argument("sweep needs values");
  SweepResult result;
  result.axis = axis;
  for (double v : values) {
    RunConfig cfg = apply_axis(base, axis, v);
    cfg.write_trace = false;
    const Experiment exp = prepare(cfg);
    for (Algorithm algo : cfg.algorithms) {
      const auto reps = run_replicates(exp, algo, cfg.replicates, exec);
      std::vector<double> expected;
      std::vector<double> realized;
      double rejections = 0.0;
      for (const auto& r : reps) {
        expected.push_back(r.report.expected);
        realized.push_back(r.report.realized);
        rejections += static_cast<double>(r.report.rejection_rounds);
      }
      SweepRow row;
      row.value = v;
      row.algorithm = algo;
      row.expected = summarize(expected);
      row.realized = summarize(realized);
      row.rejection_fraction =
          cfg.horizon > 0
              ? rejections / (static_cast<double>(cfg.horizon) * reps.size())
              : 0.0;
      result.rows.push_back(row);
    }
  }
  for (Algorithm algo : base.algorithms) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : result.rows) {
      if (row.algorithm == algo) pts.emplace_back(row.value, row.expected.mean);
    }
    if (axis == SweepAxis::Contexts) {
      if (pts.front().second > 0.0) {
        result.ratios.emplace_back(algo, pts.back().second / pts.front().second);
      } else {
        result.notes.push_back(to_string(algo) +
                               ": nonpositive regret at first M; ratio undefined");
      }
      continue;
    }
    try {
      result.slopes.emplace_back(algo, fit_scaling(pts));
    } catch (const std::invalid_argument& e) {
      result.notes.push_back(to_string(algo) + ": " + e.what());
    }
  }
  return result;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_trace(const Trace& trace, const RegretReport& report,
                 std::ostream& out) {
  std::string line;
  line.reserve(512);
  line = "{\"type\":\"header\",\"algo\":\"" + to_string(trace.algorithm) +
         "\",\"replicate\":" + std::to_string(trace.replicate) + ",\"seed\":\"";
  append_hex(line, trace.seed);
  line += "\",\"T\":" + std::to_string(trace.horizon) +
          ",\"M\":" + std::to_string(trace.num_contexts) +
          ",\"K\":" + std::to_string(trace.num_arms) + "}\n";
  out << line;
  for (const RoundEntry& r : trace.rounds) {
    line = "{\"type\":\"round\",\"t\":" + std::to_string(r.t) +
           ",\"c\":" + std::to_string(r.context) +
           ",\"arm\":" + std::to_string(r.arm) + ",\"branch\":\"" +
           (r.used_snapshot ? "s" : "p") + "\",\"q\":";
    append_array(line, r.q);
    line += ",\"digest\":\"";
    append_hex(line, r.state_digest);
    line += "\"}\n";
    out << line;
  }
  for (const EpochDiagnostics& e : trace.epochs) {
    line = "{\"type\":\"epoch\",\"e\":" + std::to_string(e.epoch) + ",\"w_hat\":";
    append_array(line, e.w_hat);
    line += ",\"w\":";
    append_array(line, e.w_exact);
    line += ",\"snapshot_digest\":\"";
    append_hex(line, e.snapshot_digest);
    line += std::string("\",\"F\":") + (e.freq_event ? "true" : "false") +
            ",\"L\":" + (e.bounded_event ? "true" : "false") +
            ",\"Q\":" + (e.all_events ? "true" : "false") + ",\"beta_min\":";
    append_double(line, e.beta_min);
    line += ",\"beta_max\":";
    append_double(line, e.beta_max);
    line += ",\"max_pseudo_sum\":";
    append_double(line, e.max_pseudo_sum);
    line += ",\"pseudo_tv_max\":";
    append_double(line, e.pseudo_tv_max);
    line += ",\"graph_inverse_lhs\":";
    append_double(line, e.graph_inverse_lhs);
    line += ",\"graph_inverse_bound\":";
    append_double(line, e.graph_inverse_bound);
    line += ",\"rejections\":" + std::to_string(e.rejection_rounds) +
            ",\"used_feedback\":" + std::to_string(e.used_feedback) + "}\n";
    out << line;
  }
  line = "{\"type\":\"summary\",\"best_policy\":[";
  for (std::size_t c = 0; c < trace.best_policy.size(); ++c) {
    if (c) line += ',';
    line += std::to_string(trace.best_policy[c]);
  }
  line += "],\"regret_expected\":";
  append_double(line, report.expected);
  line += ",\"regret_realized\":";
  append_double(line, report.realized);
  line += ",\"per_context_expected\":";
  append_array(line, report.per_context_expected);
  line += ",\"rejection_rounds\":" + std::to_string(report.rejection_rounds) + "}\n";
  out << line;
}

std::string serialize_trace(const Trace& trace, const RegretReport& report) {
  std::ostringstream os;
  write_trace(trace, report, os);
  return os.str();
}

}  // namespace crossgraph
