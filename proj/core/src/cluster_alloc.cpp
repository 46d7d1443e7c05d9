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

#include "sscf/cluster_alloc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sscf/errors.hpp"

namespace sscf {

std::vector<Subchannel> ClusterPlan::all_subchannels() const {
  std::vector<Subchannel> out;
  for (const auto& list : subchannels) out.insert(out.end(), list.begin(), list.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.center_hz < b.center_hz; });
  return out;
}

double cluster_subchannel_reward(std::span<const int> cluster_aps, std::span<const int> cluster_ues, double center_hz,
                                 double bandwidth_hz, const Scenario& scenario, const AntennaParams& params,
                                 Precoder method) {
  if (bandwidth_hz <= 0.0 || cluster_ues.empty()) return 0.0;
  const auto sub = scenario.restrict_to(cluster_aps, cluster_ues);
  return bandwidth_hz * spectral_efficiency(sub, params, center_hz, method);
}

ClusterPlan greedy_assign(std::span<const Subchannel> candidates, const Eigen::MatrixXd& rewards,
                          std::span<const int> ues_per_cluster, double min_avg_rate_bps) {
  const auto n = static_cast<Eigen::Index>(candidates.size());
  const auto Z = static_cast<Eigen::Index>(ues_per_cluster.size());
  if (rewards.rows() != n || rewards.cols() != Z) throw std::invalid_argument("greedy_assign: reward shape mismatch");
  if (Z == 0) throw std::invalid_argument("greedy_assign: no clusters");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ra = rewards.row(a).maxCoeff();
    const double rb = rewards.row(b).maxCoeff();
    if (ra != rb) return ra > rb;
    return candidates[a].center_hz < candidates[b].center_hz;
  });

  std::vector<double> running(static_cast<std::size_t>(Z), 0.0);
  auto deficient = [&](Eigen::Index z) {
    const int u = ues_per_cluster[z];
    return u > 0 && running[z] / u < min_avg_rate_bps;
  };

  ClusterPlan plan;
  plan.subchannels.assign(static_cast<std::size_t>(Z), {});
  for (Eigen::Index i : order) {
    Eigen::Index target = -1;
    for (Eigen::Index z = 0; z < Z; ++z)  // Case 1
      if (deficient(z) && rewards(i, z) > 0.0 && (target < 0 || rewards(i, z) > rewards(i, target))) target = z;
    if (target < 0) {  // Case 2
      target = 0;
      for (Eigen::Index z = 1; z < Z; ++z)
        if (rewards(i, z) > rewards(i, target)) target = z;
    }
    running[target] += rewards(i, target);
    auto s = candidates[i];
    s.rate_bps = rewards(i, target);
    plan.subchannels[target].push_back(s);
  }

  plan.ues_per_cluster.assign(ues_per_cluster.begin(), ues_per_cluster.end());
  plan.cluster_rate_bps.assign(static_cast<std::size_t>(Z), 0.0);
  plan.cluster_avg_rate_bps.assign(static_cast<std::size_t>(Z), 0.0);
  for (Eigen::Index z = 0; z < Z; ++z) {
    auto& list = plan.subchannels[z];
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.center_hz < b.center_hz; });
    double rate = 0.0;
    for (const auto& s : list) rate += s.rate_bps;
    plan.cluster_rate_bps[z] = rate;
    plan.total_rate_bps += rate;
    if (ues_per_cluster[z] > 0) {
      plan.cluster_avg_rate_bps[z] = rate / ues_per_cluster[z];
      if (plan.cluster_avg_rate_bps[z] < min_avg_rate_bps) plan.feasible = false;
    }
  }
  return plan;
}

ClusterPlan greedy_assign(std::span<const Subchannel> candidates, const Clustering& clustering,
                          double min_avg_rate_bps, const Scenario& scenario, const AntennaParams& params,
                          Precoder method) {
  const auto Z = clustering.clusters.size();
  Eigen::MatrixXd rewards(static_cast<Eigen::Index>(candidates.size()), static_cast<Eigen::Index>(Z));
  for (std::size_t z = 0; z < Z; ++z) {
    const auto ues = served_ues(clustering.clusters[z], clustering.ue_to_ap);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      double r;
      try {
        r = cluster_subchannel_reward(clustering.clusters[z], ues, c.center_hz, c.bandwidth_hz, scenario, params,
                                      method);
      } catch (const SingularChannel&) {
        r = cluster_subchannel_reward(clustering.clusters[z], ues, c.center_hz, c.bandwidth_hz, scenario, params,
                                      Precoder::MRT);
      }
      rewards(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(z)) = r;
    }
  }
  return greedy_assign(candidates, rewards, clustering.ues_per_cluster, min_avg_rate_bps);
}

LinkMask cluster_link_mask(const Scenario& scenario, const Clustering& clustering) {
  LinkMask mask = LinkMask::Constant(scenario.num_ues(), scenario.num_aps(), false);
  for (int k = 0; k < scenario.num_ues(); ++k)
    for (int m : clustering.clusters.at(static_cast<std::size_t>(clustering.ue_to_cluster.at(k)))) mask(k, m) = true;
  return mask;
}

ClusteredAllocationResult allocate_clustered(const Scenario& scenario, const AntennaParams& params, const Band& band,
                                             const Clustering& clustering, Precoder method,
                                             const CeHyperparams& hyper, const QosConfig& qos, Rng& rng) {
  params.validate();
  qos.validate();
  if (clustering.clusters.empty()) throw std::invalid_argument("allocate_clustered: empty clustering");
  const FrequencyLattice lattice(band, hyper.grid_step_hz);
  SpectrumEvaluator spectrum(scenario, params, qos, lattice, cluster_link_mask(scenario, clustering));

  const auto Z = clustering.clusters.size();
  std::vector<RateTable> tables;
  std::vector<bool> has_ues(Z);
  tables.reserve(Z);
  for (std::size_t z = 0; z < Z; ++z) {
    const auto ues = served_ues(clustering.clusters[z], clustering.ue_to_ap);
    has_ues[z] = !ues.empty();
    tables.emplace_back(scenario.restrict_to(clustering.clusters[z], ues), params, method, lattice, true);
  }

  auto outcome = run_cross_entropy<ClusterPlan>(lattice, hyper, rng, [&](std::vector<double> centers) {
    std::vector<CandidateSubchannel> cands;
    cands.reserve(centers.size());
    for (double f : centers) {
      const long n = lattice.index_of(f);
      cands.push_back({f, spectrum.coherent_bandwidth(n), spectrum.total_rss(n)});
    }
    const auto resolved = resolve_overlaps(cands, lattice.grid_step(), scenario.total_bandwidth_hz);
    const auto& subs = resolved.subchannels;
    Eigen::MatrixXd rewards(static_cast<Eigen::Index>(subs.size()), static_cast<Eigen::Index>(Z));
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const long n = lattice.index_of(subs[i].center_hz);
      for (std::size_t z = 0; z < Z; ++z)
        rewards(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(z)) =
            has_ues[z] ? subs[i].bandwidth_hz * tables[z].spectral_efficiency(n) : 0.0;
    }
    ScoredCandidate<ClusterPlan> c;
    c.payload = greedy_assign(subs, rewards, clustering.ues_per_cluster, qos.min_cluster_avg_rate_bps);
    c.reward = c.payload.total_rate_bps;
    c.feasible = c.payload.feasible;
    for (const auto& s : subs) c.active_centers.push_back(s.center_hz);
    c.centers = std::move(centers);
    return c;
  });
  if (outcome.best.payload.all_subchannels().empty())
    throw InfeasibleBand("no candidate plan kept any subchannel");

  ClusteredAllocationResult r;
  r.plan = std::move(outcome.best.payload);
  r.best_trace = std::move(outcome.best_trace);
  return r;
}

}  // namespace sscf
