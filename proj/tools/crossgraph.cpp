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

// crossgraph: run experiments, sweeps and the verification suite.
//
//   crossgraph run -c exp.ini -o out/
//   crossgraph sweep -c exp.ini --axis T --values 4096,8192,16384
//   crossgraph verify --level quick
//   crossgraph graph-info --spec cliques:4x4
//
// CROSSGRAPH_THREADS sets the number of OpenMP threads used for replicates.

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "crossgraph/config.hpp"
#include "crossgraph/harness.hpp"
#include "crossgraph/verify.hpp"

namespace {

using namespace crossgraph;

void apply_thread_env() {
  const char* env = std::getenv("CROSSGRAPH_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    throw std::invalid_argument("CROSSGRAPH_THREADS must be a positive integer");
  }
  omp_set_num_threads(static_cast<int>(n));
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_dir) {
  const RunConfig cfg = parse_config(config_path);
  const RunOutput output = run(cfg);
  std::filesystem::create_directories(out_dir);
  {
    auto out = open_out(out_dir / "report.json");
    write_report_json(cfg, output, out);
  }
  {
    auto out = open_out(out_dir / "regret.csv");
    write_regret_csv(output, out);
  }
  if (cfg.write_trace) {
    std::size_t i = 0;
    for (const AlgorithmReport& rep : output.algorithms) {
      for (const RegretReport& rr : rep.replicates) {
        const Trace& trace = output.traces.at(i++);
        auto out = open_out(out_dir / ("trace_" + to_string(trace.algorithm) +
                                       "_" + std::to_string(trace.replicate) +
                                       ".ndjson"));
        write_trace(trace, rr, out);
      }
    }
  }
  for (const AlgorithmReport& rep : output.algorithms) {
    std::cout << to_string(rep.algorithm) << ": regret " << rep.expected.mean
              << " +- " << rep.expected.stderr_ << " (expected form), "
              << rep.realized.mean << " +- " << rep.realized.stderr_
              << " (realized)\n";
  }
  return 0;
}

int cmd_sweep(const std::filesystem::path& config_path, const std::string& axis,
              const std::vector<double>& values,
              const std::filesystem::path& out_dir) {
  const RunConfig cfg = parse_config(config_path);
  const SweepResult result = sweep(cfg, parse_axis(axis), values);
  write_sweep_csv(result, std::cout);
  for (const auto& [algo, fit] : result.slopes) {
    std::cout << "# slope " << to_string(algo) << " " << fit.slope << " +- "
              << fit.slope_stderr << "\n";
  }
  for (const auto& [algo, ratio] : result.ratios) {
    std::cout << "# ratio " << to_string(algo) << " " << ratio << "\n";
  }
  for (const auto& note : result.notes) std::cout << "# note " << note << "\n";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    auto csv = open_out(out_dir / "sweep.csv");
    write_sweep_csv(result, csv);
    auto json = open_out(out_dir / "sweep.json");
    write_sweep_json(result, json);
  }
  return 0;
}

int cmd_graph_info(const std::string& spec, std::uint64_t seed) {
  const FeedbackGraph g = build_graph(parse_graph_spec(spec), seed);
  std::cout << "K " << g.num_arms() << "\n"
            << "alpha " << g.alpha() << "\n"
            << "strongly_observable " << (g.strongly_observable() ? "true" : "false")
            << "\n"
            << "self_loops " << (g.all_self_loops() ? "true" : "false") << "\n"
            << "edges " << g.edge_count() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-learning contextual bandits with graph feedback"};
  app.require_subcommand(1);

  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  run_cmd->add_option("-c,--config", config_path, "Experiment file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--out", out_dir, "Output directory")->required();

  std::string axis;
  std::vector<double> values;
  std::filesystem::path sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one axis of an experiment");
  sweep_cmd->add_option("-c,--config", config_path, "Experiment file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--axis", axis, "T, M or alpha")
      ->required()
      ->check(CLI::IsMember({"T", "M", "alpha"}));
  sweep_cmd->add_option("--values", values, "Comma-separated axis values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("-o,--out", sweep_out, "Also write sweep.csv/json here");

  std::string level = "quick";
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  verify_cmd->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  std::string spec;
  std::uint64_t seed = 0;
  auto* info_cmd = app.add_subcommand("graph-info", "Describe a feedback graph");
  info_cmd->add_option("--spec", spec, "e.g. cliques:4x4, er:10:0.3, file:g.txt")
      ->required();
  info_cmd->add_option("--seed", seed, "Seed for random graphs");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_thread_env();
    if (*run_cmd) return cmd_run(config_path, out_dir);
    if (*sweep_cmd) return cmd_sweep(config_path, axis, values, sweep_out);
    if (*verify_cmd) {
      const VerifyLevel lv =
          level == "full" ? VerifyLevel::Full : VerifyLevel::Quick;
      return run_verification(lv, std::cout) ? 0 : 1;
    }
    if (*info_cmd) return cmd_graph_info(spec, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
