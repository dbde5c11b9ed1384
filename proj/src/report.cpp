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

#include <gsl/gsl_fit.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crossgraph/harness.hpp"
#include "json.hpp"

namespace crossgraph {

namespace {

using nlohmann::json;

json to_json(const Summary& s) {
  return json{{"mean", s.mean}, {"stddev", s.stddev}, {"stderr", s.stderr_},
              {"n", s.n}};
}

std::string oracle_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::StochasticGap: return "stochastic_gap";
    case OracleKind::AdversarialShift: return "adversarial_shift";
    case OracleKind::Auction: return "auction";
    case OracleKind::TableCsv: return "table_csv";
    case OracleKind::TableBinary: return "table_binary";
  }
  return "?";
}

}  // namespace

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("scaling fit needs at least 3 points");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [px, py] : points) {
    if (!(px > 0.0) || !(py > 0.0)) {
      throw std::invalid_argument("scaling fit needs positive values, got (" +
                                  std::to_string(px) + ", " +
                                  std::to_string(py) + ")");
    }
    x.push_back(std::log(px));
    y.push_back(std::log(py));
  }
  double c0 = 0.0, c1 = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01,
                 &cov11, &sumsq);
  return ScalingFit{c1, std::sqrt(cov11), c0};
}

void write_regret_csv(const RunOutput& output, std::ostream& out) {
  out << "algo,replicate,t,cum_regret_expected,cum_regret_realized\n";
  for (const AlgorithmReport& rep : output.algorithms) {
    const std::string name = to_string(rep.algorithm);
    for (std::size_t r = 0; r < rep.replicates.size(); ++r) {
      const RegretReport& rr = rep.replicates[r];
      for (std::size_t i = 0; i < rr.curve_t.size(); ++i) {
        out << name << ',' << r << ',' << rr.curve_t[i] << ','
            << rr.curve_expected[i] << ',' << rr.curve_realized[i] << '\n';
      }
    }
  }
}

void write_report_json(const RunConfig& config, const RunOutput& output,
                       std::ostream& out) {
  json j;
  j["graph"] = to_string(config.graph);
  j["oracle"] = oracle_name(config.oracle.kind);
  j["M"] = config.num_contexts;
  j["T"] = config.horizon;
  j["seed"] = config.seed;
  j["replicates"] = config.replicates;
  json algos = json::array();
  for (const AlgorithmReport& rep : output.algorithms) {
    json a;
    a["algo"] = to_string(rep.algorithm);
    a["regret_expected"] = to_json(rep.expected);
    a["regret_realized"] = to_json(rep.realized);
    json per = json::array();
    for (const RegretReport& rr : rep.replicates) {
      per.push_back(json{{"expected", rr.expected},
                         {"realized", rr.realized},
                         {"per_context_expected", rr.per_context_expected},
                         {"rejection_rounds", rr.rejection_rounds}});
    }
    a["per_replicate"] = std::move(per);
    algos.push_back(std::move(a));
  }
  j["algorithms"] = std::move(algos);
  out << j.dump(2) << '\n';
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << to_string(result.axis)
      << ",algo,regret_expected_mean,regret_expected_stderr,"
         "regret_realized_mean,regret_realized_stderr,rejection_fraction\n";
  for (const SweepRow& row : result.rows) {
    out << row.value << ',' << to_string(row.algorithm) << ','
        << row.expected.mean << ',' << row.expected.stderr_ << ','
        << row.realized.mean << ',' << row.realized.stderr_ << ','
        << row.rejection_fraction << '\n';
  }
}

void write_sweep_json(const SweepResult& result, std::ostream& out) {
  json j;
  j["axis"] = to_string(result.axis);
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back(json{{"value", row.value},
                        {"algo", to_string(row.algorithm)},
                        {"regret_expected", to_json(row.expected)},
                        {"regret_realized", to_json(row.realized)},
                        {"rejection_fraction", row.rejection_fraction}});
  }
  j["rows"] = std::move(rows);
  json slopes = json::object();
  for (const auto& [algo, fit] : result.slopes) {
    slopes[to_string(algo)] = json{{"slope", fit.slope},
                                   {"slope_stderr", fit.slope_stderr},
                                   {"intercept", fit.intercept}};
  }
  j["slopes"] = std::move(slopes);
  json ratios = json::object();
  for (const auto& [algo, ratio] : result.ratios) ratios[to_string(algo)] = ratio;
  j["ratios"] = std::move(ratios);
  j["notes"] = result.notes;
  out << j.dump(2) << '\n';
}

}  // namespace crossgraph
