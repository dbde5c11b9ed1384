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

#include "crossgraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "crossgraph/rng.hpp"

namespace crossgraph {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int v) { return Mask{1} << v; }

void check_lists(std::span<const std::vector<Arm>> out) {
  const int k = static_cast<int>(out.size());
  for (int a = 0; a < k; ++a) {
    for (Arm b : out[a]) {
      if (b < 0 || b >= k) {
        throw std::out_of_range("arm " + std::to_string(a) +
                                " lists out-neighbor " + std::to_string(b) +
                                " outside [0, " + std::to_string(k) + ")");
      }
    }
  }
}

// Maximum independent set by branch and bound. Candidates are bounded by a
// greedy cover with conflict cliques; an independent set takes at most one
// vertex per clique.
class MaxIndependentSet {
 public:
  explicit MaxIndependentSet(std::vector<Mask> conflict)
      : conflict_(std::move(conflict)) {}

  int solve() {
    const int n = static_cast<int>(conflict_.size());
    Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
    best_ = 0;
    expand(all, 0);
    return best_;
  }

 private:
  void expand(Mask candidates, int size) {
    std::vector<int> order;
    std::vector<int> bound;
    order.reserve(std::popcount(candidates));
    bound.reserve(order.capacity());
    Mask uncovered = candidates;
    int cliques = 0;
    while (uncovered) {
      ++cliques;
      Mask joinable = uncovered;
      while (joinable) {
        const int v = std::countr_zero(joinable);
        joinable &= conflict_[v];
        uncovered &= ~bit(v);
        order.push_back(v);
        bound.push_back(cliques);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + bound[i] <= best_) return;
      const int v = order[i];
      const Mask next = candidates & ~conflict_[v] & ~bit(v);
      if (next == 0) {
        best_ = std::max(best_, size + 1);
      } else {
        expand(next, size + 1);
      }
      candidates &= ~bit(v);
    }
  }

  std::vector<Mask> conflict_;
  int best_ = 0;
};

std::vector<std::vector<Arm>> with_self_loops(int k) {
  std::vector<std::vector<Arm>> out(k);
  for (int a = 0; a < k; ++a) out[a].push_back(a);
  return out;
}

void require_positive(int k, const char* what) {
  if (k <= 0) {
    throw std::invalid_argument(std::string(what) +
                                ": number of arms must be positive");
  }
}

int parse_int(std::string_view s, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "' in " +
                                context);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

FeedbackGraph FeedbackGraph::from_out_neighbors(
    std::vector<std::vector<Arm>> out, std::optional<int> alpha) {
  if (out.empty()) {
    throw std::invalid_argument("feedback graph needs at least one arm");
  }
  check_lists(out);
  for (auto& list : out) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  FeedbackGraph g;
  const int k = static_cast<int>(out.size());
  g.in_.assign(k, {});
  for (int a = 0; a < k; ++a) {
    for (Arm b : out[a]) g.in_[b].push_back(a);
  }
  g.strongly_observable_ = is_strongly_observable(out);
  if (alpha) {
    if (*alpha < 1 || *alpha > k) {
      throw std::invalid_argument("supplied independence number out of range");
    }
    g.alpha_ = *alpha;
  } else {
    g.alpha_ = independence_number(out);
  }
  g.out_ = std::move(out);
  return g;
}

bool FeedbackGraph::has_edge(Arm from, Arm to) const {
  const auto& list = out_.at(from);
  return std::binary_search(list.begin(), list.end(), to);
}

bool FeedbackGraph::all_self_loops() const {
  for (int a = 0; a < num_arms(); ++a) {
    if (!has_self_loop(a)) return false;
  }
  return true;
}

std::size_t FeedbackGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& list : out_) n += list.size();
  return n;
}

int independence_number(std::span<const std::vector<Arm>> out_neighbors) {
  const int k = static_cast<int>(out_neighbors.size());
  if (k == 0) throw std::invalid_argument("empty graph");
  if (k > kMaxExactArms) {
    throw BudgetExceeded("exact independence number limited to " +
                         std::to_string(kMaxExactArms) + " arms, got " +
                         std::to_string(k));
  }
  check_lists(out_neighbors);
  std::vector<Mask> conflict(k, 0);
  for (int a = 0; a < k; ++a) {
    for (Arm b : out_neighbors[a]) {
      if (a == b) continue;
      conflict[a] |= bit(b);
      conflict[b] |= bit(a);
    }
  }
  return MaxIndependentSet(std::move(conflict)).solve();
}

bool is_strongly_observable(std::span<const std::vector<Arm>> out_neighbors) {
  const int k = static_cast<int>(out_neighbors.size());
  std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
  for (int a = 0; a < k; ++a) {
    for (Arm b : out_neighbors[a]) adj[a][b] = 1;
  }
  for (int a = 0; a < k; ++a) {
    if (adj[a][a]) continue;
    for (int other = 0; other < k; ++other) {
      if (other != a && !adj[other][a]) return false;
    }
  }
  return true;
}

bool is_strongly_observable(const FeedbackGraph& graph) {
  return graph.strongly_observable();
}

double neighborhood_mass(std::span<const double> p, Arm a,
                         const FeedbackGraph& graph) {
  if (a < 0 || a >= graph.num_arms()) {
    throw std::out_of_range("arm index " + std::to_string(a) +
                            " out of range");
  }
  if (static_cast<int>(p.size()) != graph.num_arms()) {
    throw std::invalid_argument("distribution size does not match graph");
  }
  double mass = 0.0;
  for (Arm src : graph.in_neighbors(a)) mass += p[src];
  return mass;
}

std::vector<double> neighborhood_masses(std::span<const double> p,
                                        const FeedbackGraph& graph) {
  if (static_cast<int>(p.size()) != graph.num_arms()) {
    throw std::invalid_argument("distribution size does not match graph");
  }
  std::vector<double> mass(p.size(), 0.0);
  for (int a = 0; a < graph.num_arms(); ++a) {
    double m = 0.0;
    for (Arm src : graph.in_neighbors(a)) m += p[src];
    mass[a] = m;
  }
  return mass;
}

GraphSpec parse_graph_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("graph spec '" + text +
                                "' must look like kind:args");
  }
  const std::string kind = text.substr(0, colon);
  const std::string_view args = std::string_view(text).substr(colon + 1);
  if (kind == "complete") return graph_kind::Complete{parse_int(args, text)};
  if (kind == "self_loops") {
    return graph_kind::SelfLoopsOnly{parse_int(args, text)};
  }
  if (kind == "triangular") {
    return graph_kind::OrderedTriangular{parse_int(args, text)};
  }
  if (kind == "cliques") {
    graph_kind::DisjointCliques spec;
    if (const auto x = args.find('x'); x != std::string_view::npos) {
      const int count = parse_int(args.substr(0, x), text);
      const int size = parse_int(args.substr(x + 1), text);
      if (count <= 0) throw std::invalid_argument("clique count must be > 0");
      spec.sizes.assign(count, size);
    } else {
      for (auto part : split(args, ',')) {
        spec.sizes.push_back(parse_int(part, text));
      }
    }
    return spec;
  }
  if (kind == "er") {
    const auto parts = split(args, ':');
    if (parts.size() != 2) {
      throw std::invalid_argument("er spec must be er:K:p, got '" + text + "'");
    }
    double p = 0.0;
    try {
      p = std::stod(std::string(parts[1]));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad edge probability in '" + text + "'");
    }
    return graph_kind::ErdosRenyi{parse_int(parts[0], text), p};
  }
  if (kind == "file") return graph_kind::Custom{std::string(args)};
  throw std::invalid_argument("unknown graph kind '" + kind + "'");
}

std::string to_string(const GraphSpec& spec) {
  struct Visitor {
    std::string operator()(const graph_kind::Complete& s) const {
      return "complete:" + std::to_string(s.num_arms);
    }
    std::string operator()(const graph_kind::SelfLoopsOnly& s) const {
      return "self_loops:" + std::to_string(s.num_arms);
    }
    std::string operator()(const graph_kind::DisjointCliques& s) const {
      std::string out = "cliques:";
      for (std::size_t i = 0; i < s.sizes.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.sizes[i]);
      }
      return out;
    }
    std::string operator()(const graph_kind::ErdosRenyi& s) const {
      std::ostringstream os;
      os << "er:" << s.num_arms << ':' << s.edge_prob;
      return os.str();
    }
    std::string operator()(const graph_kind::OrderedTriangular& s) const {
      return "triangular:" + std::to_string(s.num_arms);
    }
    std::string operator()(const graph_kind::Custom& s) const {
      return "file:" + s.adjacency_file.string();
    }
  };
  return std::visit(Visitor{}, spec);
}

FeedbackGraph build_graph(const GraphSpec& spec, std::uint64_t rng_seed) {
  struct Visitor {
    std::uint64_t seed;

    FeedbackGraph operator()(const graph_kind::Complete& s) const {
      require_positive(s.num_arms, "complete");
      std::vector<std::vector<Arm>> out(s.num_arms);
      for (auto& list : out) {
        list.resize(s.num_arms);
        std::iota(list.begin(), list.end(), 0);
      }
      return FeedbackGraph::from_out_neighbors(std::move(out), 1);
    }
    FeedbackGraph operator()(const graph_kind::SelfLoopsOnly& s) const {
      require_positive(s.num_arms, "self_loops");
      return FeedbackGraph::from_out_neighbors(with_self_loops(s.num_arms),
                                               s.num_arms);
    }
    FeedbackGraph operator()(const graph_kind::DisjointCliques& s) const {
      if (s.sizes.empty()) {
        throw std::invalid_argument("cliques: need at least one clique");
      }
      int k = 0;
      for (int size : s.sizes) {
        if (size <= 0) {
          throw std::invalid_argument("cliques: sizes must be positive");
        }
        k += size;
      }
      std::vector<std::vector<Arm>> out(k);
      int start = 0;
      for (int size : s.sizes) {
        for (int a = start; a < start + size; ++a) {
          for (int b = start; b < start + size; ++b) out[a].push_back(b);
        }
        start += size;
      }
      return FeedbackGraph::from_out_neighbors(
          std::move(out), static_cast<int>(s.sizes.size()));
    }
    FeedbackGraph operator()(const graph_kind::ErdosRenyi& s) const {
      require_positive(s.num_arms, "er");
      if (!(s.edge_prob >= 0.0 && s.edge_prob <= 1.0)) {
        throw std::invalid_argument("er: edge probability must be in [0, 1]");
      }
      Rng rng(derive_seed(seed, stream::kGraph));
      auto out = with_self_loops(s.num_arms);
      for (int a = 0; a < s.num_arms; ++a) {
        for (int b = 0; b < s.num_arms; ++b) {
          if (a != b && rng.bernoulli(s.edge_prob)) out[a].push_back(b);
        }
      }
      return FeedbackGraph::from_out_neighbors(std::move(out));
    }
    FeedbackGraph operator()(const graph_kind::OrderedTriangular& s) const {
      require_positive(s.num_arms, "triangular");
      std::vector<std::vector<Arm>> out(s.num_arms);
      for (int a = 0; a < s.num_arms; ++a) {
        for (int b = a; b < s.num_arms; ++b) out[a].push_back(b);
      }
      return FeedbackGraph::from_out_neighbors(std::move(out), 1);
    }
    FeedbackGraph operator()(const graph_kind::Custom& s) const {
      return load_adjacency(s.adjacency_file);
    }
  };
  return std::visit(Visitor{rng_seed}, spec);
}

FeedbackGraph load_adjacency(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open adjacency file " + path.string());
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() &&
         lines.back().find_first_not_of(" \t\r") == std::string::npos) {
    lines.pop_back();
  }
  if (lines.empty()) {
    throw std::invalid_argument("adjacency file " + path.string() +
                                " has no arms");
  }
  std::vector<std::vector<Arm>> out(lines.size());
  for (std::size_t a = 0; a < lines.size(); ++a) {
    std::istringstream row(lines[a]);
    std::string token;
    while (row >> token) {
      out[a].push_back(parse_int(token, path.string() + " line " +
                                            std::to_string(a + 1)));
    }
    if (std::find(out[a].begin(), out[a].end(), static_cast<Arm>(a)) ==
        out[a].end()) {
      throw std::invalid_argument("adjacency file " + path.string() +
                                  ": arm " + std::to_string(a) +
                                  " is missing its self-loop");
    }
  }
  return FeedbackGraph::from_out_neighbors(std::move(out));
}

void save_adjacency(const FeedbackGraph& graph,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (int a = 0; a < graph.num_arms(); ++a) {
    const auto list = graph.out_neighbors(a);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out << ' ';
      out << list[i];
    }
    out << '\n';
  }
}

}  // namespace crossgraph
