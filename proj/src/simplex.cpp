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

#include "crossgraph/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crossgraph {

SimplexVector::SimplexVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("empty simplex vector");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("simplex entry " + std::to_string(w) +
                                  " is not a finite nonnegative number");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument("simplex entries sum to " +
                                std::to_string(total));
  }
}

SimplexVector SimplexVector::uniform(int k) {
  if (k <= 0) throw std::invalid_argument("uniform over zero arms");
  return SimplexVector(std::vector<double>(k, 1.0 / k));
}

SimplexVector SimplexVector::indicator(int k, Arm a) {
  if (a < 0 || a >= k) throw std::out_of_range("indicator arm out of range");
  std::vector<double> w(k, 0.0);
  w[a] = 1.0;
  return SimplexVector(std::move(w));
}

CumulativeLoss::CumulativeLoss(std::vector<double> totals)
    : totals_(std::move(totals)) {
  for (double t : totals_) {
    if (!std::isfinite(t) || t < 0.0) {
      throw std::invalid_argument("cumulative loss must be finite and >= 0");
    }
  }
}

void CumulativeLoss::add(Arm a, double amount) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw std::invalid_argument("loss increment " + std::to_string(amount) +
                                " is not finite and nonnegative");
  }
  totals_.at(a) += amount;
}

SimplexVector exp_weights(std::span<const double> totals,
                          double learning_rate) {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (totals.empty()) throw std::invalid_argument("no arms");
  double lo = totals[0];
  for (double t : totals) {
    if (!std::isfinite(t)) {
      throw std::invalid_argument("non-finite cumulative loss");
    }
    lo = std::min(lo, t);
  }
  std::vector<double> w(totals.size());
  double z = 0.0;
  for (std::size_t a = 0; a < totals.size(); ++a) {
    w[a] = std::exp(-learning_rate * (totals[a] - lo));
    z += w[a];
  }
  for (double& x : w) x /= z;
  return SimplexVector(std::move(w));
}

SimplexVector exp_weights(const CumulativeLoss& cum, double learning_rate) {
  return exp_weights(cum.totals(), learning_rate);
}

SimplexVector tilt(const SimplexVector& base, std::span<const double> deltas,
                   double learning_rate) {
  if (static_cast<int>(deltas.size()) != base.size()) {
    throw std::invalid_argument("tilt: delta size mismatch");
  }
  double lo = 0.0;
  bool first = true;
  for (int a = 0; a < base.size(); ++a) {
    if (!std::isfinite(deltas[a])) {
      throw std::invalid_argument("tilt: non-finite delta");
    }
    if (base[a] > 0.0 && (first || deltas[a] < lo)) {
      lo = deltas[a];
      first = false;
    }
  }
  std::vector<double> w(base.size());
  double z = 0.0;
  for (int a = 0; a < base.size(); ++a) {
    w[a] = base[a] * std::exp(-learning_rate * (deltas[a] - lo));
    z += w[a];
  }
  for (double& x : w) x /= z;
  return SimplexVector(std::move(w));
}

Arm sample_arm(std::span<const double> p, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  Arm last_positive = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    acc += p[a];
    last_positive = static_cast<Arm>(a);
    if (u < acc) return last_positive;
  }
  // u landed in the rounding slack above the accumulated mass.
  return last_positive;
}

Arm sample_arm(const SimplexVector& p, Rng& rng) {
  return sample_arm(p.weights(), rng);
}

}  // namespace crossgraph
