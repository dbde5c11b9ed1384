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

#include "crossgraph/algo_unknown.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace crossgraph {

namespace {

double eta_from_gamma(double gamma, int epoch_len, double iota) {
  return gamma / (2.0 * (2.0 * epoch_len * gamma + iota));
}

std::string horizon_message(Round horizon, int epoch_len, Round suggested) {
  return "horizon T=" + std::to_string(horizon) +
         " is not a multiple of epoch length L=" + std::to_string(epoch_len) +
         "; nearest valid horizon is T=" + std::to_string(suggested);
}

Round nearest_multiple(Round horizon, int epoch_len) {
  const Round lower = (horizon / epoch_len) * epoch_len;
  const Round upper = lower + epoch_len;
  if (lower == 0) return upper;
  return (horizon - lower < upper - horizon) ? lower : upper;
}

}  // namespace

HorizonError::HorizonError(Round horizon, int epoch_len, Round suggested)
    : std::invalid_argument(horizon_message(horizon, epoch_len, suggested)),
      suggested_(suggested) {}

double default_iota(int num_arms, Round horizon) {
  const double t = static_cast<double>(horizon);
  return 2.0 * std::log(8.0 * num_arms * t * t);
}

ParamSchedule schedule_params(int num_arms, Round horizon, int alpha,
                              double tuned_scale, std::optional<double> iota) {
  if (num_arms < 2) throw std::invalid_argument("schedule needs K >= 2");
  if (horizon < 4) throw std::invalid_argument("schedule needs T >= 4");
  if (alpha < 1) throw std::invalid_argument("schedule needs alpha >= 1");
  if (!(tuned_scale > 0.0)) {
    throw std::invalid_argument("tuned_scale must be positive");
  }
  ParamSchedule s;
  s.tuned_scale = tuned_scale;
  s.iota = iota ? *iota : default_iota(num_arms, horizon);
  if (!(s.iota > 0.0)) throw std::invalid_argument("iota must be positive");
  const double raw = std::sqrt(s.iota * alpha * static_cast<double>(horizon) /
                               std::log(static_cast<double>(num_arms)));
  const auto max_len = static_cast<int>(std::min<Round>(
      (horizon / 2) - (horizon / 2) % 2, std::numeric_limits<int>::max() - 1));
  int len = 2 * static_cast<int>(std::llround(raw / 2.0));
  len = std::clamp(len, 2, max_len);
  return with_epoch_len(s, len);
}

ParamSchedule with_epoch_len(const ParamSchedule& params, int epoch_len) {
  if (epoch_len < 2 || epoch_len % 2 != 0) {
    throw std::invalid_argument("epoch length must be even and >= 2");
  }
  ParamSchedule s = params;
  s.epoch_len = epoch_len;
  s.gamma = s.tuned_scale * 16.0 * s.iota / epoch_len;
  s.eta = eta_from_gamma(s.gamma, epoch_len, s.iota);
  return s;
}

void validate_horizon(Round horizon, int epoch_len) {
  if (epoch_len <= 0) throw std::invalid_argument("epoch length must be > 0");
  if (horizon % epoch_len != 0) {
    throw HorizonError(horizon, epoch_len,
                       nearest_multiple(horizon, epoch_len));
  }
}

int snap_epoch_len(Round horizon, int epoch_len) {
  if (horizon < 2 || horizon % 2 != 0) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                " has no even divisor");
  }
  Round best = 2;
  for (Round d = 2; d <= horizon; d += 2) {
    if (horizon % d != 0) continue;
    if (std::llabs(d - epoch_len) < std::llabs(best - epoch_len)) best = d;
  }
  return static_cast<int>(best);
}

bool passes_rejection_check(const SimplexVector& p, const SimplexVector& s) {
  if (p.size() != s.size()) throw std::invalid_argument("size mismatch");
  for (int a = 0; a < p.size(); ++a) {
    if (p[a] < s[a] / 2.0) return false;
  }
  return true;
}

SimplexVector rejection_distribution(const SimplexVector& p,
                                     const SimplexVector& s) {
  return passes_rejection_check(p, s) ? p : s;
}

double accept_probability(const SimplexVector& s, const SimplexVector& q,
                          const FeedbackGraph& graph, Arm a) {
  const double s_mass = neighborhood_mass(s.weights(), a, graph);
  const double q_mass = neighborhood_mass(q.weights(), a, graph);
  if (!(q_mass > 0.0)) {
    throw std::logic_error("accept probability: arm " + std::to_string(a) +
                           " has zero in-neighborhood mass under q");
  }
  return std::clamp(s_mass / (2.0 * q_mass), 0.0, 1.0);
}

UnknownDistLearner::UnknownDistLearner(
    std::shared_ptr<const FeedbackGraph> graph, int num_contexts,
    Round horizon, ParamSchedule params)
    : graph_(std::move(graph)),
      num_contexts_(num_contexts),
      horizon_(horizon),
      params_(params) {
  if (!graph_) throw std::invalid_argument("null graph");
  if (num_contexts_ <= 0) throw std::invalid_argument("no contexts");
  if (params_.epoch_len < 2 || params_.epoch_len % 2 != 0) {
    throw std::invalid_argument("epoch length must be even and >= 2");
  }
  if (!(params_.gamma > 0.0) || !(params_.eta > 0.0)) {
    throw std::invalid_argument("gamma and eta must be positive");
  }
  if (horizon_ < 0) throw std::invalid_argument("negative horizon");
  validate_horizon(horizon_, params_.epoch_len);
  const int k = graph_->num_arms();
  const SimplexVector uniform = SimplexVector::uniform(k);
  state_.snapshot.assign(num_contexts_, uniform);
  state_.next_snapshot.assign(num_contexts_, uniform);
  state_.w_hat.assign(k, 0.0);
  state_.w_hat_next.assign(k, 0.0);
  state_.cum.assign(num_contexts_, CumulativeLoss(k));
  refresh_masses();
}

Round UnknownDistLearner::epoch_start() const {
  return static_cast<Round>(state_.epoch - 1) * params_.epoch_len + 1;
}

SimplexVector UnknownDistLearner::distribution(Context c) const {
  return exp_weights(state_.cum.at(c), params_.eta);
}

void UnknownDistLearner::refresh_masses() {
  const int k = num_arms();
  snapshot_mass_.resize(static_cast<std::size_t>(num_contexts_) * k);
  next_snapshot_mass_.resize(snapshot_mass_.size());
  for (Context c = 0; c < num_contexts_; ++c) {
    const auto cur = neighborhood_masses(state_.snapshot[c].weights(), *graph_);
    const auto nxt =
        neighborhood_masses(state_.next_snapshot[c].weights(), *graph_);
    std::copy(cur.begin(), cur.end(), snapshot_mass_.begin() + c * k);
    std::copy(nxt.begin(), nxt.end(), next_snapshot_mass_.begin() + c * k);
  }
}

std::vector<PlayRecord> UnknownDistLearner::run_first_epoch(
    std::span<const Context> contexts, Rng& rng) {
  const int len = params_.epoch_len;
  if (state_.epoch != 1 || next_round_ != 1) {
    throw InvariantViolation(next_round_, "first epoch already played");
  }
  if (static_cast<int>(contexts.size()) != len) {
    throw std::invalid_argument("first epoch needs exactly L contexts");
  }
  if (horizon_ < len) {
    throw InvariantViolation(next_round_, "horizon shorter than one epoch");
  }
  const int k = num_arms();
  std::vector<PlayRecord> records;
  records.reserve(len);
  for (int i = 0; i < len; ++i) {
    const Context c = contexts[i];
    if (c < 0 || c >= num_contexts_) throw std::out_of_range("context");
    const SimplexVector& s = state_.snapshot[c];  // s_1 = uniform
    PlayRecord r;
    r.t = next_round_ + i;
    r.context = c;
    r.arm = sample_arm(s, rng);
    r.q.assign(s.weights().begin(), s.weights().end());
    records.push_back(std::move(r));
    for (Arm a = 0; a < k; ++a) {
      state_.w_hat_next[a] +=
          next_snapshot_mass_[static_cast<std::size_t>(c) * k + a] / (2.0 * len);
    }
  }
  next_round_ += len;
  state_.rounds_in_epoch = len;
  return records;
}

PairOutcome UnknownDistLearner::step_pair(Round t, Context first,
                                          Context second, Rng& rng,
                                          const LossOracle& oracle) {
  const int len = params_.epoch_len;
  if (state_.epoch < 2) {
    throw InvariantViolation(t, "paired steps start in epoch 2");
  }
  if (t != next_round_ || (t - epoch_start()) % 2 != 0 ||
      state_.rounds_in_epoch + 2 > len) {
    throw InvariantViolation(t, "step_pair outside the epoch's pair grid");
  }
  if (t + 1 > horizon_) throw InvariantViolation(t, "pair runs past horizon");
  const int k = num_arms();
  const std::array<Context, 2> ctx{first, second};
  for (Context c : ctx) {
    if (c < 0 || c >= num_contexts_) throw std::out_of_range("context");
  }

  PairOutcome out;
  // Cumulative estimates do not change inside a pair, so p_{t,c} computed
  // on demand per context is the same distribution for both rounds.
  std::optional<SimplexVector> p_first;
  for (int i = 0; i < 2; ++i) {
    const Context c = ctx[i];
    SimplexVector p = (i == 1 && ctx[1] == ctx[0]) ? *p_first : distribution(c);
    const SimplexVector& s = state_.snapshot[c];
    PlayRecord& r = out.rounds[i];
    r.t = t + i;
    r.context = c;
    r.used_snapshot = !passes_rejection_check(p, s);
    const SimplexVector& q = r.used_snapshot ? s : p;
    r.arm = sample_arm(q, rng);
    r.q.assign(q.weights().begin(), q.weights().end());
    if (i == 0) p_first = std::move(p);
  }

  out.loss_slot = static_cast<int>(rng.below(2));
  const PlayRecord& freq = out.rounds[1 - out.loss_slot];
  const PlayRecord& est = out.rounds[out.loss_slot];

  // Frequency half: s_{e+1, c_{t_f}}(N_in(a)) / (2 (L / 2)).
  for (Arm a = 0; a < k; ++a) {
    state_.w_hat_next[a] +=
        next_snapshot_mass_[static_cast<std::size_t>(freq.context) * k + a] /
        len;
  }

  // Loss half with rejection thinning.
  const Reveal rev = reveal(oracle, *graph_, est.t, est.arm);
  for (std::size_t i = 0; i < rev.arms.size(); ++i) {
    const Arm a = rev.arms[i];
    double q_mass = 0.0;
    for (Arm src : graph_->in_neighbors(a)) q_mass += est.q[src];
    if (!(q_mass > 0.0)) {
      throw InvariantViolation(est.t, "revealed arm " + std::to_string(a) +
                                          " has zero in-neighborhood mass");
    }
    const double s_mass =
        snapshot_mass_[static_cast<std::size_t>(est.context) * k + a];
    const double accept = std::clamp(s_mass / (2.0 * q_mass), 0.0, 1.0);
    if (!rng.bernoulli(accept)) continue;
    out.accepted.push_back(a);
    const double denom = state_.w_hat[a] + 1.5 * params_.gamma;
    for (Context c = 0; c < num_contexts_; ++c) {
      state_.cum[c].add(a, 2.0 * rev.loss(i, c) / denom);
    }
  }

  next_round_ += 2;
  state_.rounds_in_epoch += 2;
  return out;
}

void UnknownDistLearner::end_epoch() {
  if (state_.rounds_in_epoch != params_.epoch_len) {
    throw InvariantViolation(next_round_, "end_epoch before all " +
                                              std::to_string(params_.epoch_len) +
                                              " rounds were played");
  }
  std::vector<SimplexVector> fixed;
  fixed.reserve(num_contexts_);
  for (Context c = 0; c < num_contexts_; ++c) fixed.push_back(distribution(c));
  state_.snapshot = std::move(state_.next_snapshot);
  state_.next_snapshot = std::move(fixed);
  state_.w_hat = std::move(state_.w_hat_next);
  state_.w_hat_next.assign(num_arms(), 0.0);
  ++state_.epoch;
  state_.rounds_in_epoch = 0;
  refresh_masses();
}

void UnknownDistLearner::set_cumulative(std::vector<CumulativeLoss> cum) {
  if (static_cast<int>(cum.size()) != num_contexts_) {
    throw std::invalid_argument("need one cumulative loss per context");
  }
  for (const auto& c : cum) {
    if (c.size() != num_arms()) throw std::invalid_argument("arm count mismatch");
  }
  state_.cum = std::move(cum);
}

}  // namespace crossgraph
