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

#include "crossgraph/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace crossgraph {

BaselineSpec default_baseline(BaselineKind kind, int num_arms, int alpha,
                              Round horizon, const ContextDistribution& nu,
                              double scale) {
  BaselineSpec spec;
  spec.kind = kind;
  auto rate = [&](double rounds) {
    return default_known_eta(num_arms, alpha, 1, scale) /
           std::sqrt(std::max(rounds, 1.0));
  };
  if (kind == BaselineKind::PerContextExp3G) {
    for (Context c = 0; c < nu.num_contexts(); ++c) {
      const double r = rate(nu[c] * static_cast<double>(horizon));
      spec.eta.push_back(r);
      spec.gamma_ix.push_back(r);
    }
  } else if (kind == BaselineKind::PooledExp3G) {
    const double r = rate(static_cast<double>(horizon));
    spec.eta.push_back(r);
    spec.gamma_ix.push_back(r);
  }
  return spec;
}

BaselineLearner::BaselineLearner(std::shared_ptr<const FeedbackGraph> graph,
                                 int num_contexts, BaselineSpec spec)
    : graph_(std::move(graph)), num_contexts_(num_contexts), spec_(std::move(spec)) {
  if (!graph_) throw std::invalid_argument("null graph");
  std::size_t states = 0;
  switch (spec_.kind) {
    case BaselineKind::PerContextExp3G:
      states = static_cast<std::size_t>(num_contexts_);
      break;
    case BaselineKind::PooledExp3G:
      states = 1;
      break;
    case BaselineKind::Uniform:
      states = 0;
      break;
  }
  if (spec_.eta.size() != states || spec_.gamma_ix.size() != states) {
    throw std::invalid_argument("baseline needs one eta and gamma per state");
  }
  for (std::size_t s = 0; s < states; ++s) {
    if (!(spec_.eta[s] > 0.0) || !(spec_.gamma_ix[s] >= 0.0)) {
      throw std::invalid_argument("baseline eta must be > 0, gamma_ix >= 0");
    }
  }
  cum_.assign(states, CumulativeLoss(graph_->num_arms()));
}

int BaselineLearner::state_of(Context c) const {
  return spec_.kind == BaselineKind::PerContextExp3G ? c : 0;
}

SimplexVector BaselineLearner::distribution(Context c) const {
  if (spec_.kind == BaselineKind::Uniform) {
    return SimplexVector::uniform(num_arms());
  }
  const int s = state_of(c);
  return exp_weights(cum_.at(s), spec_.eta[s]);
}

Arm BaselineLearner::act(Round t, Context c, Rng& rng) {
  if (t != round_ + 1 || acted_) {
    throw InvariantViolation(t, "baseline act called out of order");
  }
  if (c < 0 || c >= num_contexts_) throw std::out_of_range("context");
  const SimplexVector p = distribution(c);
  played_.assign(p.weights().begin(), p.weights().end());
  context_ = c;
  acted_ = true;
  return sample_arm(p, rng);
}

void BaselineLearner::update(const Reveal& reveal) {
  if (!acted_ || reveal.t != round_ + 1) {
    throw InvariantViolation(reveal.t, "baseline update without matching act");
  }
  if (spec_.kind != BaselineKind::Uniform) {
    const int s = state_of(context_);
    for (std::size_t i = 0; i < reveal.arms.size(); ++i) {
      const Arm a = reveal.arms[i];
      double mass = 0.0;
      for (Arm src : graph_->in_neighbors(a)) mass += played_[src];
      const double denom = mass + spec_.gamma_ix[s];
      if (!(denom > 0.0)) {
        throw InvariantViolation(reveal.t, "zero observation probability");
      }
      cum_[s].add(a, reveal.loss(i, context_) / denom);
    }
  }
  ++round_;
  acted_ = false;
}

}  // namespace crossgraph
