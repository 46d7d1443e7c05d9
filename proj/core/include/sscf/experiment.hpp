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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sscf/allocator.hpp"
#include "sscf/cluster_alloc.hpp"
#include "sscf/clustering.hpp"

namespace sscf {

enum class AllocatorKind { AdaptiveGmm, FixedGmm, EqualBandwidth };
enum class ClusteringMethod { None, KMeans, Hierarchical };
enum class SweepVariable { NumAps, NumUes, TotalBandwidth };

const char* to_string(AllocatorKind a);
const char* to_string(SweepVariable s);
AllocatorKind allocator_from_string(const std::string& s);
SweepVariable sweep_variable_from_string(const std::string& s);

struct ClusteringConfig {
  ClusteringMethod method = ClusteringMethod::None;
  int num_clusters = 2;  // K-means only
  AffinityOptions affinity;

  /// "none", "kmeans(4)" or "hierarchical".
  std::string label() const;
};

/// Parses "none", "hierarchical", "kmeans" or "kmeans(K)". A bare "kmeans"
/// keeps the current cluster count.
void parse_clustering_method(const std::string& s, ClusteringConfig& out);

struct ExperimentConfig {
  ScenarioConfig scenario;
  AntennaParams antenna;
  double band_upper_hz = 200e9;  // the band's lower edge is the cutoff
  CeHyperparams ce;
  QosConfig qos;
  ClusteringConfig clustering;

  Precoder precoder = Precoder::ZF;
  AllocatorKind allocator = AllocatorKind::AdaptiveGmm;
  SweepVariable sweep = SweepVariable::NumAps;
  std::vector<double> sweep_values{16, 32, 64};
  int trials = 20;
  std::uint64_t base_seed = 1;
  std::string output;     // empty: stdout
  int workers = 1;        // 0: hardware concurrency
  bool record_wall_time = false;

  Band band() const { return {antenna.cutoff_hz, band_upper_hz}; }
  void validate() const;
};

/// I contiguous subchannels of width B_total / I (capped by the usable band)
/// tiling a block centered in [f_co + grid_step / 2, f_upper]. Rates are
/// evaluated at the tile centers.
SubchannelPlan equal_bandwidth_baseline(const Scenario& scenario, const AntennaParams& params, const Band& band,
                                        int num_subchannels, Precoder method, double grid_step_hz);

/// Scenario parameters for one sweep point and trial (seed = base_seed + trial).
ScenarioConfig trial_scenario(const ExperimentConfig& config, double sweep_value, int trial);

/// Clusters the APs as configured. K-means draws from the clustering
/// stream of `seed`; with no clustering every AP forms one cluster.
Clustering cluster_aps(const ExperimentConfig& config, const Scenario& scenario, std::uint64_t seed);

struct TrialOutcome {
  Scenario scenario;
  std::optional<Clustering> clustering;
  SubchannelPlan plan;                     // without clustering
  std::optional<ClusterPlan> cluster_plan;  // with clustering
  double total_rate_bps = 0.0;
};

/// Runs the configured clustering and allocator on one generated scenario.
/// Throws SingularChannel or InfeasibleBand.
TrialOutcome run_trial(const ExperimentConfig& config, const ScenarioConfig& scenario_config);

struct TrialRecord {
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double total_rate_bps = 0.0;
  double wall_time_ms = 0.0;
  std::string status = "ok";  // otherwise the failure kind and message
};

struct SweepSummary {
  double sweep_value = 0.0;
  double mean_rate_bps = 0.0;
  double stderr_rate_bps = 0.0;
  int successful_trials = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;  // sweep-major, then trial order
  std::vector<SweepSummary> summaries;
};

/// Every sweep value x trial, distributed over config.workers threads.
/// Failed trials are flagged and excluded from the summaries.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace sscf
