// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sscf: command-line driver for subchannel allocation experiments.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sscf/config.hpp"
#include "sscf/csv.hpp"
#include "sscf/errors.hpp"
#include "sscf/experiment.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  int trial = 0;
};

sscf::ExperimentConfig resolve(const CommonOptions& opts) {
  auto config = opts.config_path.empty() ? sscf::ExperimentConfig{} : sscf::load_config(opts.config_path);
  for (const auto& o : opts.overrides) sscf::apply_override(config, o);
  if (!opts.output.empty()) config.output = opts.output;
  config.validate();
  return config;
}

// Writes to config.output, or stdout when it is empty.
template <class Write>
void emit(const std::string& path, Write&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  write(out);
}

sscf::ScenarioConfig single_scenario(const sscf::ExperimentConfig& config, int trial) {
  auto s = config.scenario;
  s.seed = config.base_seed + static_cast<std::uint64_t>(trial);
  return s;
}

void dump_trial(const sscf::ExperimentConfig& config, const sscf::TrialOutcome& outcome, std::uint64_t seed) {
  emit(config.output, [&](std::ostream& out) {
    if (outcome.cluster_plan) sscf::write_cluster_plan_csv(out, *outcome.cluster_plan);
    else sscf::write_plan_csv(out, outcome.plan);
  });
  std::cerr << "seed " << seed << ": total rate " << sscf::format_rate(outcome.total_rate_bps) << " bit/s\n";
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_trial) {
  cmd->add_option("-c,--config", opts.config_path, "INI configuration file")->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", opts.overrides, "Override a key, e.g. --set scenario.num_aps=32")
      ->allow_extra_args();
  cmd->add_option("-o,--output", opts.output, "Output CSV path (default: stdout)");
  if (with_trial) cmd->add_option("-t,--trial", opts.trial, "Trial index; seed = base_seed + trial")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subchannel allocation and AP clustering for leaky-wave cell-free networks"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* simulate = app.add_subcommand("simulate", "Run one trial and dump its plan");
  auto* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo sweep and write the experiment table");
  auto* cluster = app.add_subcommand("cluster", "Cluster the APs of one trial and dump the assignment");
  auto* baseline = app.add_subcommand("baseline", "Run one trial with equal-bandwidth allocation");
  add_common(simulate, opts, true);
  add_common(sweep, opts, false);
  add_common(cluster, opts, true);
  add_common(baseline, opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = resolve(opts);
    if (*sweep) {
      const auto result = sscf::run_experiment(config);
      emit(config.output, [&](std::ostream& out) { sscf::write_experiment_csv(out, config, result); });
    } else if (*simulate || *baseline) {
      if (*baseline) config.allocator = sscf::AllocatorKind::EqualBandwidth;
      const auto sc = single_scenario(config, opts.trial);
      dump_trial(config, sscf::run_trial(config, sc), sc.seed);
    } else if (*cluster) {
      if (config.clustering.method == sscf::ClusteringMethod::None)
        config.clustering.method = sscf::ClusteringMethod::Hierarchical;
      const auto sc = single_scenario(config, opts.trial);
      const auto scenario = sscf::generate_scenario(sc);
      const auto clustering = sscf::cluster_aps(config, scenario, sc.seed);
      emit(config.output, [&](std::ostream& out) { sscf::write_clustering_csv(out, clustering); });
      std::cerr << clustering.clusters.size() << " clusters\n";
    }
  } catch (const sscf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
