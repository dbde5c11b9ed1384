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

#include "crossgraph/verify.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <sstream>

namespace crossgraph {

namespace {

constexpr std::uint64_t kVerifySeed = 20260715;

template <typename Fn>
void for_each_index(int n, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Uniform [0, 1] losses for rounds 1..horizon.
LossOracle random_table(int m, int k, Round horizon, std::uint64_t seed) {
  std::vector<double> data(static_cast<std::size_t>(horizon) * m * k);
  Rng rng(seed);
  for (auto& x : data) x = rng.uniform();
  return table_oracle(m, k, horizon, std::move(data));
}

const ContextDistribution& skewed_nu() {
  static const ContextDistribution nu({0.1, 0.2, 0.3, 0.4});
  return nu;
}

struct Deviation {
  int failures = 0;
  double worst_z = 0.0;
};

Deviation compare(const MomentEstimate& est, std::span<const double> target,
                  std::size_t offset = 0) {
  Deviation d;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double mean = est.mean[offset + i];
    const double se = est.stderr_[offset + i];
    if (!within_stderr(mean, se, target[i])) ++d.failures;
    if (se > 0.0) d.worst_z = std::max(d.worst_z, std::abs(mean - target[i]) / se);
  }
  return d;
}

CheckResult finish(CheckResult r, const Stopwatch& sw) {
  r.seconds = sw.seconds();
  return r;
}

}  // namespace

std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " "
     << r.name << ": " << r.detail << " (" << std::fixed << std::setprecision(1)
     << r.seconds << " s)";
  return os.str();
}

Measured measure(const std::string& label, const RunConfig& config,
                 Algorithm algo, TraceLog* log, Execution exec) {
  const Experiment exp = prepare(config);
  const int n = config.replicates;
  std::vector<double> regret(n);
  std::vector<std::uint64_t> digests(n);
  std::vector<Round> rejections(n);
  std::vector<std::vector<EpochDiagnostics>> epochs(n);
  for_each_index(n, exec, [&](int r) {
    ReplicateResult res = run_replicate(exp, algo, r, true);
    digests[r] = fnv1a(serialize_trace(res.trace, res.report));
    regret[r] = res.report.expected;
    rejections[r] = res.report.rejection_rounds;
    epochs[r] = std::move(res.trace.epochs);
  });
  Measured m;
  m.regret = summarize(regret);
  double rej = 0.0;
  for (Round x : rejections) rej += static_cast<double>(x);
  m.rejection_fraction =
      config.horizon > 0 ? rej / (static_cast<double>(config.horizon) * n) : 0.0;
  for (auto& e : epochs) {
    m.epochs.insert(m.epochs.end(), std::make_move_iterator(e.begin()),
                    std::make_move_iterator(e.end()));
  }
  if (log != nullptr) log->push_back({label, config, algo, std::move(digests)});
  return m;
}

RunConfig scaling_base() {
  RunConfig cfg;
  cfg.graph = graph_kind::DisjointCliques{{4, 4, 4, 4}};
  cfg.oracle.kind = OracleKind::StochasticGap;
  cfg.oracle.base = 0.4;
  cfg.oracle.gap = 0.2;
  cfg.num_contexts = 8;
  cfg.horizon = Round{1} << 14;
  cfg.algorithms = {Algorithm::Unknown};
  cfg.params.tuned_scale = 0.02;
  cfg.params.epoch_policy = EpochLenPolicy::Divisor;
  cfg.seed = kVerifySeed;
  cfg.replicates = 20;
  return cfg;
}

KnownFixture known_fixture(const GraphSpec& spec, std::uint64_t seed) {
  constexpr Round kWarmup = 200;
  auto graph = std::make_shared<const FeedbackGraph>(
      build_graph(spec, derive_seed(seed, stream::kGraph)));
  const ContextDistribution& nu = skewed_nu();
  LossOracle oracle = random_table(nu.num_contexts(), graph->num_arms(),
                                   kWarmup + 1, derive_seed(seed, stream::kOracle));
  KnownDistLearner learner(graph, nu, 0.05);
  Rng rng(derive_seed(seed, stream::kLearner));
  for (Round t = 1; t <= kWarmup; ++t) {
    const Context c = sample_context(nu, rng);
    const Arm a = learner.act(t, c, rng);
    learner.update(reveal(oracle, *graph, t, a));
  }
  return KnownFixture{graph, nu, std::move(learner), std::move(oracle), kWarmup + 1};
}

UnknownFixture unknown_fixture(std::uint64_t seed, int pairs_into_epoch) {
  constexpr int kLen = 32;
  constexpr Round kHorizon = kLen * 8;
  auto graph = std::make_shared<const FeedbackGraph>(build_graph(
      graph_kind::ErdosRenyi{8, 0.35}, derive_seed(seed, stream::kGraph)));
  const ContextDistribution& nu = skewed_nu();
  LossOracle oracle = random_table(nu.num_contexts(), graph->num_arms(), kHorizon,
                                   derive_seed(seed, stream::kOracle));
  ParamSchedule params;
  params.iota = default_iota(graph->num_arms(), kHorizon);
  params.epoch_len = kLen;
  params.gamma = 0.05;
  params.eta = 0.08;
  UnknownDistLearner learner(graph, nu.num_contexts(), kHorizon, params);
  Rng rng(derive_seed(seed, stream::kLearner));
  const auto contexts =
      draw_contexts(nu, kHorizon, derive_seed(seed, stream::kContexts));
  learner.run_first_epoch(std::span(contexts).subspan(0, kLen), rng);
  learner.end_epoch();
  while (learner.state().epoch < 4) {
    for (int i = 0; i < kLen / 2; ++i) {
      const Round t = learner.next_round();
      learner.step_pair(t, contexts[t - 1], contexts[t], rng, oracle);
    }
    learner.end_epoch();
  }
  for (int i = 0; i < pairs_into_epoch; ++i) {
    const Round t = learner.next_round();
    learner.step_pair(t, contexts[t - 1], contexts[t], rng, oracle);
  }
  return UnknownFixture{graph, nu, std::move(learner), std::move(oracle)};
}

MomentEstimate known_estimates(const KnownFixture& fx, long long replays,
                               std::uint64_t seed, Execution exec) {
  const int m = fx.nu.num_contexts();
  const int k = fx.graph->num_arms();
  std::vector<SimplexVector> dists;
  for (Context c = 0; c < m; ++c) dists.push_back(fx.learner.distribution(c));
  return monte_carlo(
      replays, m * k, seed,
      [&](Rng& rng, std::span<double> out) {
        const Context ct = sample_context(fx.nu, rng);
        const Arm arm = sample_arm(dists[ct], rng);
        const Reveal rev = reveal(fx.oracle, *fx.graph, fx.t, arm);
        const std::vector<double> est = fx.learner.loss_estimates(rev);
        for (std::size_t i = 0; i < rev.arms.size(); ++i) {
          for (Context c = 0; c < m; ++c) {
            out[static_cast<std::size_t>(c) * k + rev.arms[i]] = est[i * m + c];
          }
        }
      },
      exec);
}

MomentEstimate unknown_pair_replays(const UnknownFixture& fx, long long replays,
                                    std::uint64_t seed, Execution exec) {
  const int m = fx.nu.num_contexts();
  const int k = fx.graph->num_arms();
  return monte_carlo(
      replays, k + m * k, seed,
      [&](Rng& rng, std::span<double> out) {
        UnknownDistLearner learner = fx.learner;
        const Round t = learner.next_round();
        const Context c1 = sample_context(fx.nu, rng);
        const Context c2 = sample_context(fx.nu, rng);
        const PairOutcome pair = learner.step_pair(t, c1, c2, rng, fx.oracle);
        for (Arm a : pair.accepted) out[a] = 1.0;
        const auto& before = fx.learner.state().cum;
        const auto& after = learner.state().cum;
        for (Context c = 0; c < m; ++c) {
          for (Arm a = 0; a < k; ++a) {
            out[k + static_cast<std::size_t>(c) * k + a] = after[c][a] - before[c][a];
          }
        }
      },
      exec);
}

MomentEstimate w_hat_replays(const UnknownFixture& fx, long long replays,
                             std::uint64_t seed, Execution exec) {
  const int k = fx.graph->num_arms();
  return monte_carlo(
      replays, k, seed,
      [&](Rng& rng, std::span<double> out) {
        UnknownDistLearner learner = fx.learner;
        while (learner.state().rounds_in_epoch < learner.params().epoch_len) {
          const Round t = learner.next_round();
          const Context c1 = sample_context(fx.nu, rng);
          const Context c2 = sample_context(fx.nu, rng);
          learner.step_pair(t, c1, c2, rng, fx.oracle);
        }
        for (Arm a = 0; a < k; ++a) out[a] = learner.state().w_hat_next[a];
      },
      exec);
}

MomentEstimate baseline_estimates(const BaselineLearner& learner,
                                  const LossOracle& oracle, Round t, Context c,
                                  long long replays, std::uint64_t seed,
                                  Execution exec) {
  const int k = learner.num_arms();
  return monte_carlo(
      replays, k, seed,
      [&](Rng& rng, std::span<double> out) {
        BaselineLearner copy = learner;
        std::vector<double> before;
        const int state = learner.kind() == BaselineKind::PooledExp3G ? 0 : c;
        const auto totals = learner.states().at(state).totals();
        before.assign(totals.begin(), totals.end());
        const Arm arm = copy.act(t, c, rng);
        copy.update(reveal(oracle, copy.graph(), t, arm));
        for (Arm a = 0; a < k; ++a) out[a] = copy.states()[state][a] - before[a];
      },
      exec);
}

CheckResult check_known_unbiased() {
  const Stopwatch sw;
  CheckResult r{1, "known-distribution estimator unbiasedness", false, "", 0.0};
  const std::vector<std::pair<std::string, GraphSpec>> graphs = {
      {"self_loops:8", graph_kind::SelfLoopsOnly{8}},
      {"er:8:0.3", graph_kind::ErdosRenyi{8, 0.3}}};
  r.pass = true;
  std::string detail;
  for (const auto& [name, spec] : graphs) {
    const KnownFixture fx = known_fixture(spec, kVerifySeed);
    const MomentEstimate est = known_estimates(fx, 100000, kVerifySeed + 1);
    const int m = fx.nu.num_contexts();
    const int k = fx.graph->num_arms();
    std::vector<double> target;
    for (Context c = 0; c < m; ++c) {
      for (Arm a = 0; a < k; ++a) target.push_back(fx.oracle.loss(fx.t, c, a));
    }
    const Deviation d = compare(est, target);
    r.pass = r.pass && d.failures == 0;
    detail += name + ": " + std::to_string(d.failures) + "/" +
              std::to_string(target.size()) + " (c,a) outside 3 SE, max |z| " +
              fmt(d.worst_z, 3) + "; ";
  }
  r.seconds = sw.seconds();
  r.pass = r.pass && r.seconds < 30.0;
  r.detail = detail + "10^5 replays per graph, limit 30 s";
  return r;
}

CheckResult check_used_feedback() {
  const Stopwatch sw;
  CheckResult r{2, "used-feedback marginal of the epoch learner", false, "", 0.0};
  const UnknownFixture fx = unknown_fixture(kVerifySeed, 5);
  const MomentEstimate est = unknown_pair_replays(fx, 100000, kVerifySeed + 2);
  const std::vector<double> w =
      exact_importance(*fx.graph, fx.nu, fx.learner.state().snapshot);
  const Deviation d = compare(est, w);
  r.seconds = sw.seconds();
  r.pass = d.failures == 0 && r.seconds < 60.0;
  r.detail = std::to_string(d.failures) + "/" + std::to_string(w.size()) +
             " arms outside 3 SE of exact w_e, max |z| " + fmt(d.worst_z, 3) +
             ", 10^5 pair replays, limit 60 s";
  return r;
}

CheckResult check_w_hat_unbiased() {
  const Stopwatch sw;
  CheckResult r{3, "w_hat unbiasedness", false, "", 0.0};
  const UnknownFixture fx = unknown_fixture(kVerifySeed, 0);
  const MomentEstimate est = w_hat_replays(fx, 10000, kVerifySeed + 3);
  const std::vector<double> w =
      exact_importance(*fx.graph, fx.nu, fx.learner.state().next_snapshot);
  const Deviation d = compare(est, w);
  r.seconds = sw.seconds();
  r.pass = d.failures == 0 && r.seconds < 60.0;
  r.detail = std::to_string(d.failures) + "/" + std::to_string(w.size()) +
             " arms outside 3 SE of exact w_{e+1}, max |z| " + fmt(d.worst_z, 3) +
             ", 10^4 epoch replays, limit 60 s";
  return r;
}

CheckResult check_concentration_events(TraceLog* log) {
  const Stopwatch sw;
  CheckResult r{4, "concentration-event frequencies", false, "", 0.0};
  constexpr double kIota = 6.0;
  RunConfig cfg;
  cfg.graph = graph_kind::DisjointCliques{{4, 4}};
  cfg.num_contexts = 4;
  cfg.horizon = Round{1} << 14;
  cfg.algorithms = {Algorithm::Unknown};
  cfg.params.iota = kIota;
  cfg.params.tuned_scale = 1.0;
  cfg.params.epoch_policy = EpochLenPolicy::Divisor;
  cfg.diagnostics.epoch = true;
  cfg.seed = kVerifySeed;
  cfg.replicates = 4;
  const ParamSchedule params = resolve_schedule(prepare(cfg));
  const Measured m = measure("concentration", cfg, Algorithm::Unknown, log);

  const int k = 8;
  const double n = static_cast<double>(m.epochs.size());
  int f = 0;
  int l = 0;
  int beta_checked = 0;
  int beta_violations = 0;
  const bool gamma_large = params.gamma >= 4.0 * kIota / params.epoch_len;
  for (const EpochDiagnostics& e : m.epochs) {
    f += e.freq_event;
    l += e.bounded_event;
    if (e.freq_event && gamma_large) {
      ++beta_checked;
      if (e.beta_min < 0.5 || e.beta_max > 2.0) ++beta_violations;
    }
  }
  const double pf = f / n;
  const double pl = l / n;
  const double se_f = std::sqrt(pf * (1.0 - pf) / n);
  const double se_l = std::sqrt(pl * (1.0 - pl) / n);
  const double bound_f = 1.0 - 2.0 * k * std::exp(-kIota) - 3.0 * se_f;
  const double bound_l = 1.0 - k * std::exp(-kIota) - 3.0 * se_l;
  r.pass = n >= 200 && pf >= bound_f && pl >= bound_l && beta_violations == 0 &&
           beta_checked > 0;
  r.detail = std::to_string(m.epochs.size()) + " epochs (L=" +
             std::to_string(params.epoch_len) + ", gamma=" + fmt(params.gamma) +
             "); P(F)=" + fmt(pf) + " >= " + fmt(bound_f) + "; P(L)=" + fmt(pl) +
             " >= " + fmt(bound_l) + "; beta outside [1/2,2] on " +
             std::to_string(beta_violations) + "/" + std::to_string(beta_checked) +
             " checked epochs";
  return finish(r, sw);
}

CheckResult check_rejection_inactivity(TraceLog* log) {
  const Stopwatch sw;
  CheckResult r{5, "rejection inactivity", false, "", 0.0};
  const RunConfig cfg = scaling_base();
  const Measured m = measure("rejection", cfg, Algorithm::Unknown, log);
  r.pass = m.rejection_fraction <= 0.05;
  r.detail = "fraction of rounds with q != p = " + fmt(m.rejection_fraction) +
             " (limit 0.05), K=16 alpha=4 M=8 T=2^14, 20 seeds";
  return finish(r, sw);
}

CheckResult check_horizon_scaling(TraceLog* log) {
  const Stopwatch sw;
  CheckResult r{6, "T-scaling of the epoch learner", false, "", 0.0};
  std::vector<std::pair<double, double>> points;
  std::string detail = "regret";
  for (int e = 12; e <= 16; ++e) {
    RunConfig cfg = scaling_base();
    cfg.horizon = Round{1} << e;
    const Measured m = measure("T=2^" + std::to_string(e), cfg, Algorithm::Unknown, log);
    points.emplace_back(static_cast<double>(cfg.horizon), m.regret.mean);
    detail += " 2^" + std::to_string(e) + ":" + fmt(m.regret.mean, 5);
  }
  double slope = std::nan("");
  try {
    const ScalingFit fit = fit_scaling(points);
    slope = fit.slope;
    detail += "; slope " + fmt(fit.slope, 3) + " +- " + fmt(fit.slope_stderr, 2);
  } catch (const std::invalid_argument& e) {
    detail += std::string("; fit failed: ") + e.what();
  }
  r.seconds = sw.seconds();
  r.pass = slope >= 0.35 && slope <= 0.65 && r.seconds < 900.0;
  r.detail = detail + " (target [0.35, 0.65], limit 15 min)";
  return r;
}

CheckResult check_context_independence(TraceLog* log) {
  const Stopwatch sw;
  CheckResult r{7, "independence from the number of contexts", false, "", 0.0};
  double unknown[2];
  double per_context[2];
  const int ms[2] = {4, 64};
  for (int i = 0; i < 2; ++i) {
    RunConfig cfg = scaling_base();
    cfg.num_contexts = ms[i];
    cfg.algorithms = {Algorithm::Unknown, Algorithm::PerContextExp3G};
    const std::string label = "M=" + std::to_string(ms[i]);
    unknown[i] = measure(label, cfg, Algorithm::Unknown, log).regret.mean;
    per_context[i] = measure(label, cfg, Algorithm::PerContextExp3G, log).regret.mean;
  }
  const double ratio_unknown = unknown[1] / unknown[0];
  const double ratio_baseline = per_context[1] / per_context[0];
  r.pass = unknown[0] > 0.0 && per_context[0] > 0.0 && ratio_unknown <= 2.0 &&
           ratio_baseline >= 2.0;
  r.detail = "epoch learner M=64/M=4 = " + fmt(ratio_unknown) + " (<= 2; " +
             fmt(unknown[1], 5) + "/" + fmt(unknown[0], 5) +
             "), per_context_exp3g = " + fmt(ratio_baseline) + " (>= 2; " +
             fmt(per_context[1], 5) + "/" + fmt(per_context[0], 5) + ")";
  return finish(r, sw);
}

CheckResult check_alpha_scaling(TraceLog* log) {
  const Stopwatch sw;
  CheckResult r{8, "alpha-scaling of the epoch learner", false, "", 0.0};
  std::vector<std::pair<double, double>> points;
  std::vector<Summary> rows;
  std::string detail = "regret";
  for (int alpha : {1, 2, 4, 8}) {
    const RunConfig cfg = apply_axis(scaling_base(), SweepAxis::Alpha, alpha);
    const Measured m =
        measure("alpha=" + std::to_string(alpha), cfg, Algorithm::Unknown, log);
    points.emplace_back(alpha, m.regret.mean);
    rows.push_back(m.regret);
    detail += " " + std::to_string(alpha) + ":" + fmt(m.regret.mean, 5) + "+-" +
              fmt(m.regret.stderr_, 2);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double slack = std::hypot(rows[i - 1].stderr_, rows[i].stderr_);
    monotone = monotone && rows[i].mean >= rows[i - 1].mean - slack;
  }
  double slope = std::nan("");
  try {
    slope = fit_scaling(points).slope;
  } catch (const std::invalid_argument& e) {
    detail += std::string("; fit failed: ") + e.what();
  }
  r.pass = monotone && slope >= 0.2 && slope <= 0.8;
  r.detail = detail + "; monotone " + (monotone ? "yes" : "no") + "; slope " +
             fmt(slope, 3) + " (target [0.2, 0.8])";
  return finish(r, sw);
}

CheckResult check_graph_inverse() {
  const Stopwatch sw;
  CheckResult r{9, "graph-inverse bound", false, "", 0.0};
  constexpr double kEps = 1e-3;
  Rng rng(derive_seed(kVerifySeed, stream::kGraph, 9));
  int violations = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + static_cast<int>(rng.below(16));
    const double p = rng.uniform();
    const auto out = random_digraph(k, p, true, rng);
    const int alpha = enumerate_independence_number(out);
    const auto w = random_simplex_point(k, kEps, rng);
    const double lhs = graph_inverse_sum(out, w);
    const double bound = 4.0 * alpha * std::log(4.0 * k / (alpha * kEps));
    if (lhs > bound) ++violations;
    worst_ratio = std::max(worst_ratio, lhs / bound);
  }
  r.pass = violations == 0;
  r.detail = std::to_string(violations) + "/100 graphs violate the bound, max lhs/bound " +
             fmt(worst_ratio, 3);
  return finish(r, sw);
}

CheckResult check_independence_oracle() {
  const Stopwatch sw;
  CheckResult r{10, "independence-number oracle equivalence", false, "", 0.0};
  Rng rng(derive_seed(kVerifySeed, stream::kGraph, 10));
  std::vector<std::vector<std::vector<Arm>>> graphs;
  for (int i = 0; i < 500; ++i) {
    const int k = 1 + static_cast<int>(rng.below(16));
    const double p = rng.uniform() * rng.uniform();
    graphs.push_back(random_digraph(k, p, rng.bernoulli(0.5), rng));
  }
  const std::vector<int> expected =
      enumerate_independence_numbers(graphs, Execution::Parallel);
  int mismatches = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (independence_number(graphs[i]) != expected[i]) ++mismatches;
  }
  r.seconds = sw.seconds();
  r.pass = mismatches == 0 && r.seconds < 60.0;
  r.detail = std::to_string(mismatches) +
             "/500 mismatches between branch-and-bound and 2^K enumeration, limit 60 s";
  return r;
}

CheckResult check_determinism(const TraceLog& log) {
  const Stopwatch sw;
  CheckResult r{11, "determinism", false, "", 0.0};
  int traces = 0;
  int differing = 0;
  for (const TraceRecord& rec : log) {
    const Experiment exp = prepare(rec.config);
    for (int rep = 0; rep < rec.config.replicates; ++rep) {
      const ReplicateResult res = run_replicate(exp, rec.algorithm, rep, true);
      ++traces;
      if (fnv1a(serialize_trace(res.trace, res.report)) != rec.digests.at(rep)) {
        ++differing;
      }
    }
  }
  r.pass = traces > 0 && differing == 0;
  r.detail = std::to_string(differing) + "/" + std::to_string(traces) +
             " traces differ on a serial rerun of " + std::to_string(log.size()) +
             " acceptance runs";
  return finish(r, sw);
}

void record_quick_traces(TraceLog* log) {
  RunConfig cfg;
  cfg.graph = graph_kind::DisjointCliques{{4, 4}};
  cfg.num_contexts = 4;
  cfg.horizon = 2048;
  cfg.params.epoch_policy = EpochLenPolicy::Divisor;
  cfg.diagnostics.epoch = true;
  cfg.seed = kVerifySeed;
  cfg.replicates = 3;
  for (Algorithm algo : {Algorithm::Known, Algorithm::Unknown,
                         Algorithm::PerContextExp3G, Algorithm::PooledExp3G,
                         Algorithm::Uniform}) {
    measure("quick", cfg, algo, log);
  }
}

std::vector<CheckResult> run_checks(VerifyLevel level, std::ostream* out) {
  std::vector<CheckResult> results;
  auto emit = [&](CheckResult r) {
    if (out != nullptr) *out << format_result(r) << std::endl;
    results.push_back(std::move(r));
  };
  auto guarded = [&](int id, const std::string& name,
                     const std::function<CheckResult()>& fn) {
    try {
      emit(fn());
    } catch (const std::exception& e) {
      emit(CheckResult{id, name, false, std::string("aborted: ") + e.what(), 0.0});
    }
  };
  TraceLog log;
  const bool full = level == VerifyLevel::Full;
  guarded(1, "known-distribution estimator unbiasedness", check_known_unbiased);
  guarded(2, "used-feedback marginal of the epoch learner", check_used_feedback);
  guarded(3, "w_hat unbiasedness", check_w_hat_unbiased);
  if (full) {
    guarded(4, "concentration-event frequencies",
            [&] { return check_concentration_events(&log); });
    guarded(5, "rejection inactivity",
            [&] { return check_rejection_inactivity(&log); });
    guarded(6, "T-scaling of the epoch learner",
            [&] { return check_horizon_scaling(&log); });
    guarded(7, "independence from the number of contexts",
            [&] { return check_context_independence(&log); });
    guarded(8, "alpha-scaling of the epoch learner",
            [&] { return check_alpha_scaling(&log); });
  } else {
    record_quick_traces(&log);
  }
  guarded(9, "graph-inverse bound", check_graph_inverse);
  guarded(10, "independence-number oracle equivalence", check_independence_oracle);
  guarded(11, "determinism", [&] { return check_determinism(log); });
  return results;
}

bool run_verification(VerifyLevel level, std::ostream& out) {
  const auto results = run_checks(level, &out);
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                      : std::to_string(failed) + " of " +
                            std::to_string(results.size()) + " checks failed")
      << std::endl;
  return failed == 0;
}

}  // namespace crossgraph
