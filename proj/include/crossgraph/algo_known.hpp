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

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crossgraph/environment.hpp"
#include "crossgraph/graph.hpp"
#include "crossgraph/simplex.hpp"

namespace crossgraph {

// Raised when a learner detects a broken internal invariant (zero importance
// on a revealed arm, out-of-order rounds). Carries the offending round.
class InvariantViolation : public std::logic_error {
 public:
  InvariantViolation(Round t, const std::string& what)
      : std::logic_error("round " + std::to_string(t) + ": " + what), round_(t) {}
  Round round() const { return round_; }

 private:
  Round round_;
};

// sqrt(ln K / (alpha T)) times `scale`.
double default_known_eta(int num_arms, int alpha, Round horizon,
                         double scale = 1.0);

// Cross-learning FTRL with the context distribution known: one exponential
// weights state per context, fed importance-weighted losses whose importance
// w_t(a) = E_{c~nu}[p_{t,c}(N_in(a))] is computed exactly.
class KnownDistLearner {
 public:
  KnownDistLearner(std::shared_ptr<const FeedbackGraph> graph,
                   ContextDistribution nu, double eta);

  int num_arms() const { return graph_->num_arms(); }
  int num_contexts() const { return nu_.num_contexts(); }
  double eta() const { return eta_; }
  Round round() const { return round_; }
  const FeedbackGraph& graph() const { return *graph_; }
  const ContextDistribution& nu() const { return nu_; }

  SimplexVector distribution(Context c) const;
  // sum_c nu(c) p_{t,c}
  std::vector<double> mixture() const;
  double known_importance(Arm a) const;
  std::vector<double> importances() const;

  // Plays round t = round() + 1 in context c. Does not touch the
  // cumulative losses.
  Arm act(Round t, Context c, Rng& rng);
  // Distribution used by the latest act().
  const std::vector<double>& played_distribution() const { return played_; }

  // Increments update() would add: entry [i * M + c] is
  // loss(arms[i], c) / w_t(arms[i]).
  std::vector<double> loss_estimates(const Reveal& reveal) const;
  void update(const Reveal& reveal);

  const std::vector<CumulativeLoss>& cumulative() const { return cum_; }
  void set_cumulative(std::vector<CumulativeLoss> cum);

 private:
  std::shared_ptr<const FeedbackGraph> graph_;
  ContextDistribution nu_;
  double eta_;
  std::vector<CumulativeLoss> cum_;
  Round round_ = 0;
  bool acted_ = false;
  std::vector<double> played_;
};

}  // namespace crossgraph
