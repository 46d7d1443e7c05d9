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

#include "sscf/allocator.hpp"

#include <cmath>
#include <stdexcept>

#include "sscf/errors.hpp"

namespace sscf {

void CeHyperparams::validate() const {
  if (num_samples < 2) throw std::invalid_argument("need at least two samples per iteration");
  if (num_elites < 1 || num_elites >= num_samples) throw std::invalid_argument("need 1 <= elites < samples");
  if (max_iterations < 1) throw std::invalid_argument("need at least one iteration");
  if (max_components < 1) throw std::invalid_argument("need at least one mixture component");
  if (!(smoothing > 0.0 && smoothing <= 1.0)) throw std::invalid_argument("smoothing must lie in (0, 1]");
  if (!(grid_step_hz > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (num_subchannels < 1) throw std::invalid_argument("need at least one subchannel");
}

SubchannelPlan evaluate_centers(std::span<const double> centers, SpectrumEvaluator& spectrum, RateTable& rates,
                                double total_bandwidth_hz) {
  const auto& lattice = spectrum.lattice();
  std::vector<CandidateSubchannel> cands;
  cands.reserve(centers.size());
  for (double f : centers) {
    const long n = lattice.index_of(f);
    cands.push_back({f, spectrum.coherent_bandwidth(n), spectrum.total_rss(n)});
  }
  auto plan = resolve_overlaps(cands, lattice.grid_step(), total_bandwidth_hz);
  std::erase_if(plan.subchannels, [&](const Subchannel& s) {
    return !std::isfinite(rates.spectral_efficiency(lattice.index_of(s.center_hz)));
  });
  double total = 0.0;
  for (auto& s : plan.subchannels) {
    s.rate_bps = s.bandwidth_hz * rates.spectral_efficiency(lattice.index_of(s.center_hz));
    total += s.rate_bps;
  }
  plan.achieved_rate_bps = total;
  return plan;
}

AllocationResult allocate(const Scenario& scenario, const AntennaParams& params, const Band& band, Precoder method,
                          const CeHyperparams& hyper, const QosConfig& qos, Rng& rng) {
  params.validate();
  qos.validate();
  const FrequencyLattice lattice(band, hyper.grid_step_hz);
  SpectrumEvaluator spectrum(scenario, params, qos, lattice);
  RateTable rates(scenario, params, method, lattice);

  auto outcome = run_cross_entropy<SubchannelPlan>(lattice, hyper, rng, [&](std::vector<double> centers) {
    ScoredCandidate<SubchannelPlan> c;
    c.payload = evaluate_centers(centers, spectrum, rates, scenario.total_bandwidth_hz);
    c.reward = c.payload.achieved_rate_bps;
    for (const auto& s : c.payload.subchannels) c.active_centers.push_back(s.center_hz);
    c.centers = std::move(centers);
    return c;
  });
  if (outcome.best.payload.empty()) throw InfeasibleBand("no candidate plan kept any subchannel");

  AllocationResult r;
  r.plan = std::move(outcome.best.payload);
  r.best_trace = std::move(outcome.best_trace);
  r.selected_components = std::move(outcome.selected_components);
  r.final_model = std::move(outcome.final_model);
  return r;
}

}  // namespace sscf
