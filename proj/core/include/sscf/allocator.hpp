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

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "sscf/gmm.hpp"
#include "sscf/subchannel.hpp"

namespace sscf {

struct CeHyperparams {
  int num_samples = 50;        // candidates per iteration
  int num_elites = 10;
  int max_iterations = 30;
  int max_components = 5;      // 1 pins the proposal to a single Gaussian
  double smoothing = 0.7;      // weight of the freshly fitted model
  double grid_step_hz = 10e6;  // bandwidth search step
  int num_subchannels = 8;     // center frequencies drawn per candidate

  void validate() const;
};

/// A scored candidate of one cross-entropy iteration.
template <class Payload>
struct ScoredCandidate {
  std::vector<double> centers;         // sampled lattice centers, ascending
  std::vector<double> active_centers;  // centers that kept nonzero bandwidth
  Payload payload{};
  double reward = 0.0;
  bool feasible = true;
};

/// Feasible first, then higher reward, then lower center frequencies.
template <class Payload>
bool ranks_before(const ScoredCandidate<Payload>& a, const ScoredCandidate<Payload>& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.reward != b.reward) return a.reward > b.reward;
  return std::lexicographical_compare(a.centers.begin(), a.centers.end(), b.centers.begin(), b.centers.end());
}

template <class Payload>
struct CeOutcome {
  ScoredCandidate<Payload> best;
  std::vector<double> best_trace;  // best-ever reward after each iteration
  std::vector<std::size_t> selected_components;
  Gmm final_model;
};

/// Cross-entropy search over subchannel center frequencies.
///
/// Each iteration draws num_subchannels centers per candidate from the
/// mixture proposal (snapped to the lattice), scores every candidate with
/// `evaluate`, keeps the num_elites best plus the best candidate of the
/// previous iteration, refits the mixture for every component count up to
/// max_components, keeps the lowest-BIC fit and blends it into the proposal.
/// The best candidate ever seen is returned.
template <class Payload, class Evaluate>
CeOutcome<Payload> run_cross_entropy(const FrequencyLattice& lattice, const CeHyperparams& hyper, Rng& rng,
                                     Evaluate&& evaluate) {
  hyper.validate();
  const Band& band = lattice.band();
  EmOptions em;
  em.variance_floor = default_variance_floor(band);

  CeOutcome<Payload> out;
  Gmm proposal = initial_proposal(band, static_cast<std::size_t>(hyper.num_samples),
                                  static_cast<std::size_t>(hyper.max_components));
  std::optional<ScoredCandidate<Payload>> best_ever;
  std::optional<ScoredCandidate<Payload>> previous_best;

  std::vector<ScoredCandidate<Payload>> pool;
  for (int t = 0; t < hyper.max_iterations; ++t) {
    pool.clear();
    for (int c = 0; c < hyper.num_samples; ++c) {
      auto draws = sample_gmm(proposal, static_cast<std::size_t>(hyper.num_subchannels), band, rng);
      for (auto& f : draws) f = lattice.frequency(lattice.nearest(f));
      std::sort(draws.begin(), draws.end());
      pool.push_back(evaluate(std::move(draws)));
    }
    std::stable_sort(pool.begin(), pool.end(), ranks_before<Payload>);

    std::vector<double> elite_points;
    const auto n_elite = std::min<std::size_t>(static_cast<std::size_t>(hyper.num_elites), pool.size());
    for (std::size_t e = 0; e < n_elite; ++e)
      elite_points.insert(elite_points.end(), pool[e].active_centers.begin(), pool[e].active_centers.end());
    if (previous_best)
      elite_points.insert(elite_points.end(), previous_best->active_centers.begin(),
                          previous_best->active_centers.end());

    previous_best = pool.front();
    if (!best_ever || ranks_before(pool.front(), *best_ever)) best_ever = pool.front();
    out.best_trace.push_back(best_ever->reward);

    if (elite_points.empty()) {
      out.selected_components.push_back(0);
      continue;
    }
    auto fit = select_by_bic(elite_points, static_cast<std::size_t>(hyper.max_components), em);
    out.selected_components.push_back(fit.selected);
    proposal = smooth(fit.model, proposal, hyper.smoothing, em.variance_floor);
  }
  out.best = std::move(*best_ever);
  out.final_model = std::move(proposal);
  return out;
}

struct AllocationResult {
  SubchannelPlan plan;
  std::vector<double> best_trace;
  std::vector<std::size_t> selected_components;
  Gmm final_model;
};

/// Scores one set of sampled centers: coherent bandwidths, overlap
/// resolution, then plan rate. Subchannels whose ZF precoder is infeasible
/// are dropped.
SubchannelPlan evaluate_centers(std::span<const double> centers, SpectrumEvaluator& spectrum, RateTable& rates,
                                double total_bandwidth_hz);

/// Cross-entropy subchannel allocation over the whole network.
/// Throws InfeasibleBand if no candidate ever kept a subchannel.
AllocationResult allocate(const Scenario& scenario, const AntennaParams& params, const Band& band, Precoder method,
                          const CeHyperparams& hyper, const QosConfig& qos, Rng& rng);

}  // namespace sscf
