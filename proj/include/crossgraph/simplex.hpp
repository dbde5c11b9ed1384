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

#include <span>
#include <vector>

#include "crossgraph/graph.hpp"
#include "crossgraph/rng.hpp"

namespace crossgraph {

inline constexpr double kSimplexTolerance = 1e-9;

// A probability vector over arms. Construction validates nonnegativity and
// unit mass (within kSimplexTolerance).
class SimplexVector {
 public:
  explicit SimplexVector(std::vector<double> weights);

  static SimplexVector uniform(int k);
  static SimplexVector indicator(int k, Arm a);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](Arm a) const { return weights_[a]; }
  std::span<const double> weights() const { return weights_; }

  friend bool operator==(const SimplexVector&, const SimplexVector&) = default;

 private:
  std::vector<double> weights_;
};

// Running per-arm sum of estimated losses for one context. Increments must be
// nonnegative and finite, so totals never decrease.
class CumulativeLoss {
 public:
  explicit CumulativeLoss(int k) : totals_(k, 0.0) {}
  explicit CumulativeLoss(std::vector<double> totals);

  int size() const { return static_cast<int>(totals_.size()); }
  double operator[](Arm a) const { return totals_[a]; }
  std::span<const double> totals() const { return totals_; }

  void add(Arm a, double amount);

  friend bool operator==(const CumulativeLoss&, const CumulativeLoss&) =
      default;

 private:
  std::vector<double> totals_;
};

// Closed-form minimizer of <p, totals> + (1/eta) * sum p log p over the
// simplex: p(a) proportional to exp(-eta * totals(a)), evaluated after
// shifting by min(totals).
SimplexVector exp_weights(std::span<const double> totals, double learning_rate);
SimplexVector exp_weights(const CumulativeLoss& cum, double learning_rate);

// p' proportional to base * exp(-eta * deltas).
SimplexVector tilt(const SimplexVector& base, std::span<const double> deltas,
                   double learning_rate);

// Inverse-CDF draw over arm order; one uniform per call.
Arm sample_arm(const SimplexVector& p, Rng& rng);
Arm sample_arm(std::span<const double> p, Rng& rng);

}  // namespace crossgraph
