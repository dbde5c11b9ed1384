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

#include "crossgraph/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace crossgraph {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> kSchema = {
      {"", {"seed", "replicates"}},
      {"graph", {"spec", "kind", "K", "p", "sizes", "clique_size", "file"}},
      {"env", {"M", "T", "nu", "oracle", "base", "gap", "table", "bids"}},
      {"algo", {"algorithms", "params"}},
      {"params",
       {"eta_scale", "gamma_ix_scale", "tuned_scale", "iota", "epoch_policy",
        "eta", "gamma", "gamma_ix", "epoch_len"}},
      {"diagnostics", {"epoch", "graph_inverse_every"}},
      {"output", {"trace", "csv_points"}},
  };
  return kSchema;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::filesystem::path base_dir)
      : tree_(tree), base_dir_(std::move(base_dir)) {}

  bool has(const std::string& key) const {
    return tree_.get_child_optional(pt::ptree::path_type(key, '.')).has_value();
  }

  std::string text(const std::string& key) const {
    auto node = tree_.get_child_optional(pt::ptree::path_type(key, '.'));
    if (!node) throw ConfigError(key + ": missing");
    return boost::algorithm::trim_copy(node->data());
  }

  std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  template <typename T>
  T number(const std::string& key) const {
    const std::string s = text(key);
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError(key + ": cannot parse '" + s + "' as a number");
    }
    return value;
  }

  template <typename T>
  T number_or(const std::string& key, T fallback) const {
    return has(key) ? number<T>(key) : fallback;
  }

  bool flag_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string s = boost::algorithm::to_lower_copy(text(key));
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + s + "'");
  }

  template <typename T>
  std::vector<T> list(const std::string& key) const {
    std::vector<std::string> parts;
    const std::string s = text(key);
    boost::algorithm::split(parts, s, boost::is_any_of(","));
    std::vector<T> out;
    for (auto& part : parts) {
      boost::algorithm::trim(part);
      T value{};
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
        throw ConfigError(key + ": cannot parse list entry '" + part + "'");
      }
      out.push_back(value);
    }
    return out;
  }

  const std::filesystem::path& base_dir() const { return base_dir_; }

  std::filesystem::path path(const std::string& key) const {
    std::filesystem::path p = text(key);
    return p.is_absolute() ? p : base_dir_ / p;
  }

 private:
  const pt::ptree& tree_;
  std::filesystem::path base_dir_;
};

void check_keys(const pt::ptree& tree) {
  const auto& known = schema();
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      if (!known.at("").count(name)) {
        throw ConfigError(name + ": unknown key");
      }
      continue;
    }
    auto section = known.find(name);
    if (section == known.end() || name.empty()) {
      throw ConfigError("[" + name + "]: unknown section");
    }
    for (const auto& [key, leaf] : node) {
      if (!section->second.count(key)) {
        throw ConfigError(name + "." + key + ": unknown key");
      }
    }
  }
}

GraphSpec read_graph(const Reader& r) {
  if (r.has("graph.spec")) {
    if (r.has("graph.kind")) {
      throw ConfigError("graph.spec: give either spec or kind, not both");
    }
    try {
      GraphSpec spec = parse_graph_spec(r.text("graph.spec"));
      if (auto* custom = std::get_if<graph_kind::Custom>(&spec)) {
        if (custom->adjacency_file.is_relative()) {
          custom->adjacency_file = r.base_dir() / custom->adjacency_file;
        }
      }
      return spec;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("graph.spec: ") + e.what());
    }
  }
  const std::string kind = r.text("graph.kind");
  if (kind == "file") return graph_kind::Custom{r.path("graph.file")};
  if (kind == "cliques") {
    if (r.has("graph.sizes")) return graph_kind::DisjointCliques{r.list<int>("graph.sizes")};
    const int k = r.number<int>("graph.K");
    const int size = r.number<int>("graph.clique_size");
    if (size < 1 || k < 1 || k % size != 0) {
      throw ConfigError("graph.clique_size: must divide graph.K");
    }
    return graph_kind::DisjointCliques{std::vector<int>(k / size, size)};
  }
  const int k = r.number<int>("graph.K");
  if (k < 1) throw ConfigError("graph.K: must be >= 1");
  if (kind == "complete") return graph_kind::Complete{k};
  if (kind == "self_loops") return graph_kind::SelfLoopsOnly{k};
  if (kind == "triangular") return graph_kind::OrderedTriangular{k};
  if (kind == "er") return graph_kind::ErdosRenyi{k, r.number<double>("graph.p")};
  throw ConfigError("graph.kind: unknown kind '" + kind + "'");
}

OracleSpec read_oracle(const Reader& r) {
  OracleSpec o;
  const std::string kind = r.text_or("env.oracle", "stochastic_gap");
  if (kind == "stochastic_gap") {
    o.kind = OracleKind::StochasticGap;
  } else if (kind == "adversarial_shift") {
    o.kind = OracleKind::AdversarialShift;
  } else if (kind == "auction") {
    o.kind = OracleKind::Auction;
    if (r.has("env.bids")) o.bids_path = r.path("env.bids");
  } else if (kind == "table") {
    const auto path = r.path("env.table");
    o.kind = path.extension() == ".csv" ? OracleKind::TableCsv
                                        : OracleKind::TableBinary;
    o.table_path = path;
  } else {
    throw ConfigError("env.oracle: unknown oracle '" + kind + "'");
  }
  o.base = r.number_or<double>("env.base", o.base);
  o.gap = r.number_or<double>("env.gap", o.gap);
  if (!(o.base >= 0.0 && o.gap >= 0.0 && o.base + o.gap <= 1.0)) {
    throw ConfigError("env.gap: need base >= 0, gap >= 0, base + gap <= 1");
  }
  return o;
}

AlgoParams read_params(const Reader& r) {
  AlgoParams p;
  const std::string mode = r.text_or("algo.params", "auto");
  if (mode == "manual") {
    p.manual = true;
  } else if (mode != "auto") {
    throw ConfigError("algo.params: expected auto or manual, got '" + mode + "'");
  }
  p.eta_scale = r.number_or<double>("params.eta_scale", p.eta_scale);
  p.gamma_ix_scale = r.number_or<double>("params.gamma_ix_scale", p.eta_scale);
  p.tuned_scale = r.number_or<double>("params.tuned_scale", p.tuned_scale);
  if (r.has("params.iota")) p.iota = r.number<double>("params.iota");
  const std::string policy = r.text_or("params.epoch_policy", "exact");
  if (policy == "divisor") {
    p.epoch_policy = EpochLenPolicy::Divisor;
  } else if (policy != "exact") {
    throw ConfigError("params.epoch_policy: expected exact or divisor");
  }
  if (r.has("params.eta")) p.eta = r.number<double>("params.eta");
  if (r.has("params.gamma")) p.gamma = r.number<double>("params.gamma");
  if (r.has("params.gamma_ix")) p.gamma_ix = r.number<double>("params.gamma_ix");
  if (r.has("params.epoch_len")) p.epoch_len = r.number<int>("params.epoch_len");
  if (!p.manual && (p.eta || p.gamma || p.gamma_ix || p.epoch_len)) {
    throw ConfigError("params: eta, gamma, gamma_ix, epoch_len need algo.params = manual");
  }
  for (double v : {p.eta_scale, p.gamma_ix_scale, p.tuned_scale}) {
    if (!(v > 0.0)) throw ConfigError("params: scales must be > 0");
  }
  return p;
}

}  // namespace

RunConfig parse_config_string(const std::string& text,
                              const std::filesystem::path& base_dir) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  check_keys(tree);
  const Reader r(tree, base_dir);

  RunConfig cfg;
  if (!r.has("seed")) throw ConfigError("seed: missing (every experiment needs a seed)");
  cfg.seed = r.number<std::uint64_t>("seed");
  cfg.replicates = r.number_or<int>("replicates", 1);
  cfg.graph = read_graph(r);
  cfg.oracle = read_oracle(r);
  cfg.num_contexts = r.number<int>("env.M");
  cfg.horizon = r.number<Round>("env.T");
  if (r.has("env.nu")) cfg.nu = r.list<double>("env.nu");
  cfg.algorithms.clear();
  {
    std::vector<std::string> names;
    const std::string s = r.text("algo.algorithms");
    boost::algorithm::split(names, s, boost::is_any_of(","));
    for (auto& n : names) {
      boost::algorithm::trim(n);
      try {
        cfg.algorithms.push_back(parse_algorithm(n));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("algo.algorithms: ") + e.what());
      }
    }
  }
  cfg.params = read_params(r);
  cfg.diagnostics.epoch = r.flag_or("diagnostics.epoch", false);
  cfg.diagnostics.graph_inverse_every =
      r.number_or<int>("diagnostics.graph_inverse_every", 0);
  cfg.write_trace = r.flag_or("output.trace", false);
  cfg.csv_points = r.number_or<int>("output.csv_points", cfg.csv_points);

  try {
    prepare(cfg);
  } catch (const HorizonError& e) {
    throw ConfigError(std::string("env.T: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config_string(text.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace crossgraph
