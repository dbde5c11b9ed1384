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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "crossgraph/harness.hpp"

namespace crossgraph {

// Experiment files are INI: root keys plus [graph], [env], [algo], [params],
// [diagnostics] and [output] sections.
//
//   seed = 7
//   replicates = 20
//
//   [graph]
//   kind = cliques      ; complete | self_loops | cliques | er | triangular | file
//   K = 16
//   clique_size = 4     ; or sizes = 4,4,8
//
//   [env]
//   M = 8
//   T = 16384
//   oracle = stochastic_gap
//   gap = 0.2
//
//   [algo]
//   algorithms = unknown,per_context_exp3g
//   params = auto
//
// Unknown keys are errors. Relative file paths resolve against the config
// file's directory.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

RunConfig parse_config_string(const std::string& text,
                              const std::filesystem::path& base_dir = ".");
RunConfig parse_config(const std::filesystem::path& path);

}  // namespace crossgraph
