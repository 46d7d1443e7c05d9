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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sscf/allocator.hpp"
#include "sscf/clustering.hpp"

namespace sscf {

/// Subchannels assigned exclusively to AP clusters.
struct ClusterPlan {
  std::vector<std::vector<Subchannel>> subchannels;  // per cluster, ascending center
  std::vector<double> cluster_rate_bps;
  std::vector<double> cluster_avg_rate_bps;  // per served UE; 0 for void clusters
  std::vector<int> ues_per_cluster;
  bool feasible = true;
  double total_rate_bps = 0.0;

  /// Every assigned subchannel, ascending center.
  std::vector<Subchannel> all_subchannels() const;
};

/// B * sum_{k in cluster} log2(1 + gamma_k(f)) with the intra-cluster channel.
/// Propagates SingularChannel.
double cluster_subchannel_reward(std::span<const int> cluster_aps, std::span<const int> cluster_ues, double center_hz,
                                 double bandwidth_hz, const Scenario& scenario, const AntennaParams& params,
                                 Precoder method);

/// Exclusive assignment of disjoint candidates to clusters.
///
/// rewards(i, z) is the rate candidate i earns in cluster z. Candidates are
/// visited in decreasing order of their best reward. While some cluster
/// with UEs is below min_avg_rate and earns a positive reward from the
/// candidate, the candidate goes to the best such cluster; otherwise it goes
/// to the best cluster overall. Ties go to the lowest cluster index.
ClusterPlan greedy_assign(std::span<const Subchannel> candidates, const Eigen::MatrixXd& rewards,
                          std::span<const int> ues_per_cluster, double min_avg_rate_bps);

/// Same, computing rewards from the clustering (ZF falls back to MRT).
ClusterPlan greedy_assign(std::span<const Subchannel> candidates, const Clustering& clustering,
                          double min_avg_rate_bps, const Scenario& scenario, const AntennaParams& params,
                          Precoder method);

/// Links from each UE to the APs of its own cluster.
LinkMask cluster_link_mask(const Scenario& scenario, const Clustering& clustering);

struct ClusteredAllocationResult {
  ClusterPlan plan;
  std::vector<double> best_trace;
};

/// Cross-entropy allocation where each candidate is scored by the greedy
/// exclusive assignment across clusters; feasible candidates rank first.
ClusteredAllocationResult allocate_clustered(const Scenario& scenario, const AntennaParams& params, const Band& band,
                                             const Clustering& clustering, Precoder method,
                                             const CeHyperparams& hyper, const QosConfig& qos, Rng& rng);

}  // namespace sscf
