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

#include "crossgraph/algo_known.hpp"

#include <cmath>

namespace crossgraph {

double default_known_eta(int num_arms, int alpha, Round horizon,
                         double scale) {
  if (num_arms < 2 || alpha < 1 || horizon < 1 || !(scale > 0.0)) {
    throw std::invalid_argument(
        "default learning rate needs K >= 2, alpha >= 1, T >= 1, scale > 0");
  }
  return scale * std::sqrt(std::log(static_cast<double>(num_arms)) /
                           (static_cast<double>(alpha) * horizon));
}

KnownDistLearner::KnownDistLearner(std::shared_ptr<const FeedbackGraph> graph,
                                   ContextDistribution nu, double eta)
    : graph_(std::move(graph)), nu_(std::move(nu)), eta_(eta) {
  if (!graph_) throw std::invalid_argument("null graph");
  if (!(eta_ > 0.0) || !std::isfinite(eta_)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  cum_.assign(nu_.num_contexts(), CumulativeLoss(graph_->num_arms()));
}

SimplexVector KnownDistLearner::distribution(Context c) const {
  return exp_weights(cum_.at(c), eta_);
}

std::vector<double> KnownDistLearner::mixture() const {
  std::vector<double> pbar(num_arms(), 0.0);
  for (Context c = 0; c < num_contexts(); ++c) {
    if (nu_[c] == 0.0) continue;
    const SimplexVector p = distribution(c);
    for (Arm a = 0; a < num_arms(); ++a) pbar[a] += nu_[c] * p[a];
  }
  return pbar;
}

std::vector<double> KnownDistLearner::importances() const {
  // E_c[p_c(N_in(a))] = pbar(N_in(a)) by linearity.
  return neighborhood_masses(mixture(), *graph_);
}

double KnownDistLearner::known_importance(Arm a) const {
  return neighborhood_mass(mixture(), a, *graph_);
}

Arm KnownDistLearner::act(Round t, Context c, Rng& rng) {
  if (t != round_ + 1 || acted_) {
    throw InvariantViolation(t, "act called out of order (learner at round " +
                                    std::to_string(round_) + ")");
  }
  const SimplexVector p = distribution(c);
  played_.assign(p.weights().begin(), p.weights().end());
  acted_ = true;
  return sample_arm(p, rng);
}

std::vector<double> KnownDistLearner::loss_estimates(
    const Reveal& reveal) const {
  const std::vector<double> w = importances();
  std::vector<double> est(reveal.losses.size(), 0.0);
  for (std::size_t i = 0; i < reveal.arms.size(); ++i) {
    const Arm a = reveal.arms[i];
    if (!(w[a] > 0.0)) {
      throw InvariantViolation(reveal.t, "zero importance for revealed arm " +
                                             std::to_string(a));
    }
    for (Context c = 0; c < reveal.num_contexts; ++c) {
      est[i * reveal.num_contexts + c] = reveal.loss(i, c) / w[a];
    }
  }
  return est;
}

void KnownDistLearner::update(const Reveal& reveal) {
  if (reveal.t != round_ + 1) {
    throw InvariantViolation(reveal.t, "reveal does not match learner round " +
                                           std::to_string(round_ + 1));
  }
  if (reveal.num_contexts != num_contexts()) {
    throw std::invalid_argument("reveal context count mismatch");
  }
  const std::vector<double> est = loss_estimates(reveal);
  for (std::size_t i = 0; i < reveal.arms.size(); ++i) {
    for (Context c = 0; c < reveal.num_contexts; ++c) {
      cum_[c].add(reveal.arms[i], est[i * reveal.num_contexts + c]);
    }
  }
  ++round_;
  acted_ = false;
}

void KnownDistLearner::set_cumulative(std::vector<CumulativeLoss> cum) {
  if (static_cast<int>(cum.size()) != num_contexts()) {
    throw std::invalid_argument("need one cumulative loss per context");
  }
  for (const auto& c : cum) {
    if (c.size() != num_arms()) throw std::invalid_argument("arm count mismatch");
  }
  cum_ = std::move(cum);
}

}  // namespace crossgraph
