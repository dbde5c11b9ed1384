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

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "crossgraph/algo_known.hpp"
#include "crossgraph/environment.hpp"
#include "crossgraph/graph.hpp"
#include "crossgraph/simplex.hpp"

namespace crossgraph {

// Parameters of the epoch learner.
//   iota        confidence level, 2 ln(8 K T^2) unless overridden
//   epoch_len   L, even
//   gamma       implicit exploration, tuned_scale * 16 iota / L
//   eta         gamma / (2 (2 L gamma + iota))
struct ParamSchedule {
  double iota = 0.0;
  int epoch_len = 2;
  double gamma = 0.0;
  double eta = 0.0;
  double tuned_scale = 1.0;
};

// The horizon is not a multiple of the epoch length.
class HorizonError : public std::invalid_argument {
 public:
  HorizonError(Round horizon, int epoch_len, Round suggested);
  Round suggested_horizon() const { return suggested_; }

 private:
  Round suggested_;
};

double default_iota(int num_arms, Round horizon);

// Default schedule. L = sqrt(iota alpha T / ln K) rounded to the
// nearest even integer and clamped to [2, T/2]. Does not check T % L; see
// validate_horizon.
ParamSchedule schedule_params(int num_arms, Round horizon, int alpha,
                              double tuned_scale = 1.0,
                              std::optional<double> iota = {});

// Same iota and tuned_scale, new L; gamma and eta recomputed.
ParamSchedule with_epoch_len(const ParamSchedule& params, int epoch_len);

// Throws HorizonError (with the nearest multiple of L) unless L | T.
void validate_horizon(Round horizon, int epoch_len);

// Even divisor of T closest to L (ties toward the smaller).
int snap_epoch_len(Round horizon, int epoch_len);

// p if p(a) >= s(a) / 2 for every arm, otherwise s.
bool passes_rejection_check(const SimplexVector& p, const SimplexVector& s);
SimplexVector rejection_distribution(const SimplexVector& p,
                                     const SimplexVector& s);

// s(N_in(a)) / (2 q(N_in(a))), clamped to [0, 1].
double accept_probability(const SimplexVector& s, const SimplexVector& q,
                          const FeedbackGraph& graph, Arm a);

struct EpochState {
  int epoch = 1;
  std::vector<SimplexVector> snapshot;       // s_e, per context
  std::vector<SimplexVector> next_snapshot;  // s_{e+1}, per context
  std::vector<double> w_hat;                 // frozen importances for epoch e
  std::vector<double> w_hat_next;            // accumulator for e + 1
  std::vector<CumulativeLoss> cum;
  int rounds_in_epoch = 0;
};

struct PlayRecord {
  Round t = 0;
  Context context = 0;
  Arm arm = 0;
  bool used_snapshot = false;  // q = s_e
  std::vector<double> q;       // played distribution
};

struct PairOutcome {
  std::array<PlayRecord, 2> rounds;
  int loss_slot = 0;           // index into rounds of t_l; the other is t_f
  std::vector<Arm> accepted;   // arms a with A_{t_l} -> a and S = 1
};

// Epoch learner for an unknown context distribution. Play follows FTRL
// (exp weights on cumulative estimates) through a rejection step against a
// two-epoch-old snapshot; observation probabilities are estimated from the
// frequency half of each round pair and frozen for the next epoch.
class UnknownDistLearner {
 public:
  UnknownDistLearner(std::shared_ptr<const FeedbackGraph> graph,
                     int num_contexts, Round horizon, ParamSchedule params);

  int num_arms() const { return graph_->num_arms(); }
  int num_contexts() const { return num_contexts_; }
  Round horizon() const { return horizon_; }
  const ParamSchedule& params() const { return params_; }
  const EpochState& state() const { return state_; }
  const FeedbackGraph& graph() const { return *graph_; }
  // First round of the current epoch.
  Round epoch_start() const;
  Round next_round() const { return next_round_; }
  bool finished() const { return next_round_ > horizon_; }

  // FTRL distribution from the current cumulative estimates.
  SimplexVector distribution(Context c) const;

  // Epoch 1: uniform play over L rounds while accumulating w_hat_2 with
  // divisor 2L. Produces no loss estimates.
  std::vector<PlayRecord> run_first_epoch(std::span<const Context> contexts,
                                          Rng& rng);

  // Rounds (t, t+1) of epoch e >= 2. t must be the next round at an even
  // offset into the epoch.
  PairOutcome step_pair(Round t, Context first, Context second, Rng& rng,
                        const LossOracle& oracle);

  // Fixes s_{e+2} from the current cumulative estimates, promotes w_hat and
  // moves to epoch e + 1.
  void end_epoch();

  void set_cumulative(std::vector<CumulativeLoss> cum);

 private:
  void refresh_masses();

  std::shared_ptr<const FeedbackGraph> graph_;
  int num_contexts_;
  Round horizon_;
  ParamSchedule params_;
  EpochState state_;
  Round next_round_ = 1;
  // Cached s_e(N_in(a)) and s_{e+1}(N_in(a)), [c * K + a].
  std::vector<double> snapshot_mass_;
  std::vector<double> next_snapshot_mass_;
};

}  // namespace crossgraph
