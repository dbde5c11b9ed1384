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
#include <vector>

#include "crossgraph/algo_known.hpp"
#include "crossgraph/environment.hpp"
#include "crossgraph/graph.hpp"
#include "crossgraph/simplex.hpp"

namespace crossgraph {

// Reference learners without cross-learning.
//   PerContextExp3G  one graph-feedback exp-weights state per context, fed only
//                    the realized context's losses
//   PooledExp3G      one state for all contexts
//   Uniform          1/K forever
enum class BaselineKind { PerContextExp3G, PooledExp3G, Uniform };

struct BaselineSpec {
  BaselineKind kind = BaselineKind::Uniform;
  // One entry per state (M for per-context, 1 for pooled, empty for uniform).
  std::vector<double> eta;
  std::vector<double> gamma_ix;
};

// eta = gamma_ix = scale * sqrt(ln K / (alpha T_s)) where T_s is the expected
// number of rounds reaching state s (T nu(c) per context, T pooled).
BaselineSpec default_baseline(BaselineKind kind, int num_arms, int alpha,
                              Round horizon, const ContextDistribution& nu,
                              double scale = 1.0);

class BaselineLearner {
 public:
  BaselineLearner(std::shared_ptr<const FeedbackGraph> graph, int num_contexts,
                  BaselineSpec spec);

  BaselineKind kind() const { return spec_.kind; }
  int num_arms() const { return graph_->num_arms(); }
  const FeedbackGraph& graph() const { return *graph_; }
  Round round() const { return round_; }

  SimplexVector distribution(Context c) const;
  Arm act(Round t, Context c, Rng& rng);
  const std::vector<double>& played_distribution() const { return played_; }

  // Consumes only the acted context's row of the reveal.
  void update(const Reveal& reveal);

  // Cumulative estimates of state s (empty for Uniform).
  const std::vector<CumulativeLoss>& states() const { return cum_; }

 private:
  int state_of(Context c) const;

  std::shared_ptr<const FeedbackGraph> graph_;
  int num_contexts_;
  BaselineSpec spec_;
  std::vector<CumulativeLoss> cum_;
  Round round_ = 0;
  bool acted_ = false;
  Context context_ = 0;
  std::vector<double> played_;
};

}  // namespace crossgraph
