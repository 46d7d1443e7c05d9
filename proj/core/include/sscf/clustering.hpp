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

#include <cstddef>
#include <span>
#include <vector>

#include "sscf/antenna.hpp"
#include "sscf/mimo.hpp"
#include "sscf/random.hpp"
#include "sscf/scenario.hpp"

namespace sscf {

/// Disjoint AP index sets.
using ClusterSets = std::vector<std::vector<int>>;

struct Clustering {
  ClusterSets clusters;
  std::vector<int> ue_to_ap;
  std::vector<int> ue_to_cluster;
  std::vector<int> ues_per_cluster;  // 0 marks a void cluster
  bool converged = true;             // affinity propagation settled
  std::size_t initial_cluster_count = 0;
};

/// Sorts members, orders clusters by their smallest AP index and drops
/// empty sets.
void normalize(ClusterSets& clusters);

/// Lloyd iterations on AP positions with farthest-point seeding from a
/// random first AP. Empty clusters are re-seeded from the AP farthest
/// from its centroid.
ClusterSets kmeans_clusters(std::span<const Point2> ap_positions, int num_clusters, Rng& rng);

/// Per UE, the AP with the largest one-shot RSS (ties: lowest index).
std::vector<int> serving_aps(const Scenario& scenario, const AntennaParams& params, const Band& band);

struct Association {
  std::vector<int> ue_to_ap;
  std::vector<int> ue_to_cluster;
};
Association associate_ues(const Scenario& scenario, const AntennaParams& params, const Band& band,
                          const ClusterSets& clusters);

struct AffinityOptions {
  double damping = 0.5;
  int max_iterations = 200;
  int convergence_iterations = 20;
  /// Point clouds no wider than this collapse to a single cluster.
  double colocation_tolerance_m = 1e-2;
};

struct AffinityResult {
  ClusterSets clusters;
  std::vector<int> exemplars;
  bool converged = false;
  int iterations = 0;
};

/// Affinity propagation with negative Euclidean distance similarities and
/// the median similarity as every point's preference.
AffinityResult affinity_propagation(std::span<const Point2> positions, const AffinityOptions& options = {});

/// Context shared by the cluster scoring functions.
struct ClusterScoring {
  const Scenario& scenario;
  AntennaParams params;
  Band band;
  Precoder method = Precoder::ZF;
  std::vector<int> ue_to_ap;
};

/// UEs whose serving AP belongs to the cluster, ascending.
std::vector<int> served_ues(std::span<const int> cluster, std::span<const int> ue_to_ap);

/// (1 / |cluster|) * sum over served UEs of log2(1 + gamma_k), using only the
/// cluster's APs and UEs. Each UE is evaluated at the peak-radiation
/// frequency of its serving AP. ZF failures fall back to MRT.
double per_ap_spectral_efficiency(std::span<const int> cluster, const ClusterScoring& ctx);

/// Folds every UE-less cluster (ascending) into the serving cluster whose
/// merged per-AP spectral efficiency is largest.
ClusterSets merge_void_clusters(ClusterSets clusters, const ClusterScoring& ctx);

/// Repeatedly merges the pair whose merged per-AP spectral efficiency beats
/// the better of the two by the largest positive margin.
ClusterSets hierarchical_merge(ClusterSets clusters, const ClusterScoring& ctx);

/// Normalizes the sets and fills the UE association.
Clustering make_clustering(ClusterSets clusters, const Scenario& scenario, const AntennaParams& params,
                           const Band& band);

/// Affinity propagation, RSS association, void merge, pairwise merge.
Clustering hierarchical_clustering(const Scenario& scenario, const AntennaParams& params, const Band& band,
                                   Precoder method = Precoder::ZF, const AffinityOptions& options = {});

}  // namespace sscf
