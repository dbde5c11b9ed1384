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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crossgraph {

using Arm = int;

// Exact independence number is only computed up to this many arms.
inline constexpr int kMaxExactArms = 64;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Directed feedback graph over arms [0, K). Playing arm a reveals the losses
// of every arm in out_neighbors(a). Immutable once built.
class FeedbackGraph {
 public:
  // Builds from per-arm out-neighbor lists (duplicates removed, order
  // normalized). When `alpha` is not supplied it is computed exactly, which
  // requires K <= kMaxExactArms.
  static FeedbackGraph from_out_neighbors(std::vector<std::vector<Arm>> out,
                                          std::optional<int> alpha = {});

  int num_arms() const { return static_cast<int>(out_.size()); }
  std::span<const Arm> out_neighbors(Arm a) const { return out_.at(a); }
  std::span<const Arm> in_neighbors(Arm a) const { return in_.at(a); }
  bool has_edge(Arm from, Arm to) const;
  bool has_self_loop(Arm a) const { return has_edge(a, a); }
  bool all_self_loops() const;
  int alpha() const { return alpha_; }
  bool strongly_observable() const { return strongly_observable_; }
  std::size_t edge_count() const;

 private:
  FeedbackGraph() = default;

  std::vector<std::vector<Arm>> out_;
  std::vector<std::vector<Arm>> in_;
  int alpha_ = 1;
  bool strongly_observable_ = false;
};

namespace graph_kind {
struct Complete {
  int num_arms;
};
struct SelfLoopsOnly {
  int num_arms;
};
struct DisjointCliques {
  std::vector<int> sizes;
};
struct ErdosRenyi {
  int num_arms;
  double edge_prob;
};
// b -> b' iff b' >= b: winning at a bid reveals the outcome at every
// higher bid.
struct OrderedTriangular {
  int num_arms;
};
struct Custom {
  std::filesystem::path adjacency_file;
};
}  // namespace graph_kind

using GraphSpec =
    std::variant<graph_kind::Complete, graph_kind::SelfLoopsOnly,
                 graph_kind::DisjointCliques, graph_kind::ErdosRenyi,
                 graph_kind::OrderedTriangular, graph_kind::Custom>;

// Parses the compact textual form used by the CLI and config files:
//   complete:K  self_loops:K  cliques:MxS  cliques:s1,s2,...  er:K:p
//   triangular:K  file:<path>
GraphSpec parse_graph_spec(const std::string& text);
std::string to_string(const GraphSpec& spec);

// Every generated graph carries a self-loop on every arm. Deterministic in
// (spec, rng_seed); only erdos_renyi consumes the seed.
FeedbackGraph build_graph(const GraphSpec& spec, std::uint64_t rng_seed);

// Reads the plain-text adjacency format: line i lists the out-neighbors of
// arm i, space separated, 0-indexed. Self-loops must be listed.
FeedbackGraph load_adjacency(const std::filesystem::path& path);
void save_adjacency(const FeedbackGraph& graph,
                    const std::filesystem::path& path);

// Maximum independent set size of the undirected conflict relation
// (a, b conflict iff a -> b or b -> a, a != b). Branch and bound with a
// greedy clique-cover bound. Throws BudgetExceeded for K > kMaxExactArms.
int independence_number(std::span<const std::vector<Arm>> out_neighbors);

// Every arm either observes itself or is observed by all other arms.
bool is_strongly_observable(std::span<const std::vector<Arm>> out_neighbors);
bool is_strongly_observable(const FeedbackGraph& graph);

// p(N_in(a)): total probability of the arms whose play reveals arm a.
double neighborhood_mass(std::span<const double> p, Arm a,
                         const FeedbackGraph& graph);

// neighborhood_mass for every arm at once.
std::vector<double> neighborhood_masses(std::span<const double> p,
                                        const FeedbackGraph& graph);

}  // namespace crossgraph
