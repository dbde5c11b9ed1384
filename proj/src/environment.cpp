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

#include "crossgraph/environment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace crossgraph {

namespace {

constexpr std::uint64_t kCoinTag = 0xC017;
constexpr std::uint64_t kBestTag = 0xBE57;
constexpr std::uint64_t kBidTag = 0xB1D;
constexpr int kShiftSegments = 4;

bool bernoulli_coin(std::uint64_t seed, Round t, Context c, Arm a,
                    double mean) {
  return hash_uniform({seed, kCoinTag, static_cast<std::uint64_t>(t),
                       static_cast<std::uint64_t>(c),
                       static_cast<std::uint64_t>(a)}) < mean;
}

Round segment_length(Round horizon) {
  return (horizon + kShiftSegments - 1) / kShiftSegments;
}

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " entries must be in [0,1]");
    }
    if (i && grid[i] < grid[i - 1]) {
      throw std::invalid_argument(std::string(name) + " must be sorted ascending");
    }
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    cells.push_back(cell);
  }
  return cells;
}

bool parses_as_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

template <typename T>
void write_le(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little,
                "binary tensor I/O assumes a little-endian host");
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::invalid_argument("truncated binary tensor");
  return value;
}

}  // namespace

ContextDistribution::ContextDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("no contexts");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("context probabilities must be >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument("context probabilities sum to " +
                                std::to_string(total));
  }
}

ContextDistribution ContextDistribution::uniform(int num_contexts) {
  if (num_contexts <= 0) throw std::invalid_argument("no contexts");
  return ContextDistribution(
      std::vector<double>(num_contexts, 1.0 / num_contexts));
}

Context sample_context(const ContextDistribution& nu, Rng& rng) {
  return sample_arm(nu.probs(), rng);
}

LossOracle::LossOracle(Kind kind, int num_contexts, int num_arms,
                       std::optional<Round> horizon, std::uint64_t seed)
    : kind_(std::move(kind)),
      num_contexts_(num_contexts),
      num_arms_(num_arms),
      horizon_(horizon),
      seed_(seed) {
  if (num_contexts <= 0 || num_arms <= 0) {
    throw std::invalid_argument("oracle needs positive M and K");
  }
  if (horizon && *horizon < 0) throw std::invalid_argument("negative horizon");
  const std::size_t cells = static_cast<std::size_t>(num_contexts) * num_arms;
  if (const auto* g = std::get_if<oracle_kind::StochasticGap>(&kind_)) {
    if (g->means.size() != cells) {
      throw std::invalid_argument("stochastic_gap: means must be M*K");
    }
    for (double m : g->means) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw std::invalid_argument("stochastic_gap: means must be in [0,1]");
      }
    }
  } else if (const auto* s = std::get_if<oracle_kind::AdversarialShift>(&kind_)) {
    if (!horizon) throw std::invalid_argument("adversarial_shift needs T");
    if (!(s->base >= 0.0 && s->base + s->gap <= 1.0 && s->gap >= 0.0)) {
      throw std::invalid_argument("adversarial_shift: base+gap must be in [0,1]");
    }
    if (s->best.size() != kShiftSegments * static_cast<std::size_t>(num_contexts)) {
      throw std::invalid_argument("adversarial_shift: best-arm table size");
    }
  } else if (const auto* au = std::get_if<oracle_kind::Auction>(&kind_)) {
    if (au->values.size() != static_cast<std::size_t>(num_contexts) ||
        au->bids.size() != static_cast<std::size_t>(num_arms)) {
      throw std::invalid_argument("auction: grid sizes must be M and K");
    }
    if (!horizon || au->opposing.size() != static_cast<std::size_t>(*horizon)) {
      throw std::invalid_argument("auction: need one opposing bid per round");
    }
  } else if (const auto* tab = std::get_if<oracle_kind::Table>(&kind_)) {
    if (!horizon || tab->data.size() != cells * static_cast<std::size_t>(*horizon)) {
      throw std::invalid_argument("table: data must hold T*M*K losses");
    }
    for (double x : tab->data) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("table: losses must lie in [0,1]");
      }
    }
  }
}

void LossOracle::check(Round t, Context c, Arm a) const {
  if (t < 1 || (horizon_ && t > *horizon_)) {
    throw std::out_of_range("round " + std::to_string(t) + " out of range");
  }
  if (c < 0 || c >= num_contexts_) {
    throw std::out_of_range("context " + std::to_string(c) + " out of range");
  }
  if (a < 0 || a >= num_arms_) {
    throw std::out_of_range("arm " + std::to_string(a) + " out of range");
  }
}

double LossOracle::expected_loss(Round t, Context c, Arm a) const {
  check(t, c, a);
  if (const auto* g = std::get_if<oracle_kind::StochasticGap>(&kind_)) {
    return g->means[static_cast<std::size_t>(c) * num_arms_ + a];
  }
  if (const auto* s = std::get_if<oracle_kind::AdversarialShift>(&kind_)) {
    const auto segment = static_cast<std::size_t>((t - 1) / segment_length(*horizon_));
    const Arm best = s->best[segment * num_contexts_ + c];
    return s->base + (a == best ? 0.0 : s->gap);
  }
  return loss(t, c, a);
}

double LossOracle::loss(Round t, Context c, Arm a) const {
  check(t, c, a);
  struct Visitor {
    const LossOracle& self;
    Round t;
    Context c;
    Arm a;

    double operator()(const oracle_kind::StochasticGap& g) const {
      const double mean =
          g.means[static_cast<std::size_t>(c) * self.num_arms_ + a];
      return bernoulli_coin(self.seed_, t, c, a, mean) ? 1.0 : 0.0;
    }
    double operator()(const oracle_kind::AdversarialShift&) const {
      return bernoulli_coin(self.seed_, t, c, a, self.expected_loss(t, c, a))
                 ? 1.0
                 : 0.0;
    }
    double operator()(const oracle_kind::Auction& au) const {
      const double v = au.values[c];
      const double b = au.bids[a];
      const double m = au.opposing[static_cast<std::size_t>(t - 1)];
      const double u = std::clamp(b >= m ? v - b : 0.0, -1.0, 1.0);
      return (1.0 - u) / 2.0;
    }
    double operator()(const oracle_kind::Table& tab) const {
      return tab.data[(static_cast<std::size_t>(t - 1) * self.num_contexts_ + c) *
                          self.num_arms_ +
                      a];
    }
  };
  return std::visit(Visitor{*this, t, c, a}, kind_);
}

double loss(const LossOracle& oracle, Round t, Context c, Arm a) {
  return oracle.loss(t, c, a);
}

Arm gap_best_arm(Context c, int num_arms, std::uint64_t seed) {
  return static_cast<Arm>(
      hash_words({seed, kBestTag, static_cast<std::uint64_t>(c)}) %
      static_cast<std::uint64_t>(num_arms));
}

std::vector<double> gap_means(int num_contexts, int num_arms, double base,
                              double gap, std::uint64_t seed) {
  if (!(base >= 0.0 && gap >= 0.0 && base + gap <= 1.0)) {
    throw std::invalid_argument("gap means need 0 <= base, base + gap <= 1");
  }
  std::vector<double> means(static_cast<std::size_t>(num_contexts) * num_arms);
  for (Context c = 0; c < num_contexts; ++c) {
    const Arm best = gap_best_arm(c, num_arms, seed);
    for (Arm a = 0; a < num_arms; ++a) {
      means[static_cast<std::size_t>(c) * num_arms + a] =
          base + (a == best ? 0.0 : gap);
    }
  }
  return means;
}

LossOracle stochastic_gap(int num_contexts, int num_arms,
                          std::vector<double> means, std::uint64_t seed) {
  return LossOracle(oracle_kind::StochasticGap{std::move(means)}, num_contexts,
                    num_arms, std::nullopt, seed);
}

LossOracle adversarial_shift(int num_contexts, int num_arms, Round horizon,
                             double base, double gap, std::uint64_t seed) {
  oracle_kind::AdversarialShift s{base, gap, {}};
  for (int segment = 0; segment < kShiftSegments; ++segment) {
    for (Context c = 0; c < num_contexts; ++c) {
      s.best.push_back(static_cast<Arm>(
          hash_words({seed, kBestTag, static_cast<std::uint64_t>(segment),
                      static_cast<std::uint64_t>(c)}) %
          static_cast<std::uint64_t>(num_arms)));
    }
  }
  return LossOracle(std::move(s), num_contexts, num_arms, horizon, seed);
}

LossOracle table_oracle(int num_contexts, int num_arms, Round horizon,
                        std::vector<double> data) {
  return LossOracle(oracle_kind::Table{std::move(data)}, num_contexts, num_arms,
                    horizon, 0);
}

LossOracle auction_losses(std::vector<double> value_grid,
                          std::vector<double> bid_grid,
                          std::vector<double> opposing_bids) {
  check_grid(value_grid, "value grid");
  check_grid(bid_grid, "bid grid");
  for (double m : opposing_bids) {
    if (!std::isfinite(m)) throw std::invalid_argument("non-finite opposing bid");
  }
  const int m = static_cast<int>(value_grid.size());
  const int k = static_cast<int>(bid_grid.size());
  const auto horizon = static_cast<Round>(opposing_bids.size());
  return LossOracle(oracle_kind::Auction{std::move(value_grid),
                                         std::move(bid_grid),
                                         std::move(opposing_bids)},
                    m, k, horizon, 0);
}

std::vector<double> random_opposing_bids(Round horizon, std::uint64_t seed) {
  std::vector<double> bids(static_cast<std::size_t>(horizon));
  for (Round t = 1; t <= horizon; ++t) {
    bids[t - 1] = hash_uniform({seed, kBidTag, static_cast<std::uint64_t>(t)});
  }
  return bids;
}

std::vector<double> linear_grid(int n) {
  if (n <= 0) throw std::invalid_argument("grid needs n >= 1");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = n == 1 ? 1.0 : static_cast<double>(i) / (n - 1);
  return grid;
}

LossOracle load_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  struct Row {
    Round t;
    int c;
    int a;
    double loss;
  };
  std::vector<Row> rows;
  Round horizon = 0;
  int m = 0;
  int k = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 4) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 4 columns t,c,a,loss");
    }
    if (!parses_as_number(cells[0])) {
      if (line_no == 1) continue;  // header
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": bad row");
    }
    Row r{std::stoll(cells[0]), std::stoi(cells[1]), std::stoi(cells[2]),
          std::stod(cells[3])};
    if (r.t < 1 || r.c < 0 || r.a < 0) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": negative index");
    }
    horizon = std::max(horizon, r.t);
    m = std::max(m, r.c + 1);
    k = std::max(k, r.a + 1);
    rows.push_back(r);
  }
  const std::size_t cells = static_cast<std::size_t>(horizon) * m * k;
  if (rows.size() != cells) {
    throw std::invalid_argument(path.string() + ": expected " +
                                std::to_string(cells) + " rows, found " +
                                std::to_string(rows.size()));
  }
  std::vector<double> data(cells, -1.0);
  for (const Row& r : rows) {
    double& slot = data[(static_cast<std::size_t>(r.t - 1) * m + r.c) * k + r.a];
    if (slot >= 0.0) {
      throw std::invalid_argument(path.string() + ": duplicate (t,c,a)");
    }
    slot = r.loss;
  }
  return table_oracle(m, k, horizon, std::move(data));
}

LossOracle load_table_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "XGLT", 4) != 0) {
    throw std::invalid_argument(path.string() + ": not an XGLT tensor");
  }
  const auto horizon = read_le<std::uint32_t>(in);
  const auto m = read_le<std::uint32_t>(in);
  const auto k = read_le<std::uint32_t>(in);
  std::vector<double> data(static_cast<std::size_t>(horizon) * m * k);
  for (double& x : data) x = read_le<double>(in);
  return table_oracle(static_cast<int>(m), static_cast<int>(k), horizon,
                      std::move(data));
}

void save_table_csv(const LossOracle& oracle,
                    const std::filesystem::path& path) {
  if (!oracle.horizon()) throw std::invalid_argument("oracle has no horizon");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,c,a,loss\n";
  out.precision(17);
  for (Round t = 1; t <= *oracle.horizon(); ++t) {
    for (Context c = 0; c < oracle.num_contexts(); ++c) {
      for (Arm a = 0; a < oracle.num_arms(); ++a) {
        out << t << ',' << c << ',' << a << ',' << oracle.loss(t, c, a) << '\n';
      }
    }
  }
}

void save_table_binary(const LossOracle& oracle,
                       const std::filesystem::path& path) {
  if (!oracle.horizon()) throw std::invalid_argument("oracle has no horizon");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write("XGLT", 4);
  write_le(out, static_cast<std::uint32_t>(*oracle.horizon()));
  write_le(out, static_cast<std::uint32_t>(oracle.num_contexts()));
  write_le(out, static_cast<std::uint32_t>(oracle.num_arms()));
  for (Round t = 1; t <= *oracle.horizon(); ++t) {
    for (Context c = 0; c < oracle.num_contexts(); ++c) {
      for (Arm a = 0; a < oracle.num_arms(); ++a) {
        write_le(out, oracle.loss(t, c, a));
      }
    }
  }
}

std::vector<double> load_opposing_bids_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::vector<double> bids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    const std::string& cell = cells.back();
    if (!parses_as_number(cell)) {
      if (line_no == 1) continue;
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": bad bid");
    }
    bids.push_back(std::stod(cell));
  }
  return bids;
}

Reveal reveal(const LossOracle& oracle, const FeedbackGraph& graph, Round t,
              Arm played_arm) {
  if (played_arm < 0 || played_arm >= graph.num_arms()) {
    throw std::out_of_range("played arm out of range");
  }
  Reveal r;
  r.t = t;
  r.played_arm = played_arm;
  r.num_contexts = oracle.num_contexts();
  const auto out = graph.out_neighbors(played_arm);
  r.arms.assign(out.begin(), out.end());
  r.losses.resize(r.arms.size() * r.num_contexts);
  for (std::size_t i = 0; i < r.arms.size(); ++i) {
    for (Context c = 0; c < r.num_contexts; ++c) {
      r.losses[i * r.num_contexts + c] = oracle.loss(t, c, r.arms[i]);
    }
  }
  return r;
}

}  // namespace crossgraph
