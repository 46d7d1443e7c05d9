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

#include "sscf/subchannel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sscf/errors.hpp"

namespace sscf {
namespace {

Eigen::VectorXd to_db(const Eigen::VectorXd& linear) {
  Eigen::VectorXd out(linear.size());
  for (Eigen::Index k = 0; k < linear.size(); ++k) out(k) = 10.0 * std::log10(linear(k));
  return out;
}

}  // namespace

void QosConfig::validate() const {
  if (!(min_rx_psd_w_per_hz > 0.0)) throw std::invalid_argument("minimum received PSD must be positive");
  if (!(coherence_gap_db > 0.0)) throw std::invalid_argument("coherence gap must be positive");
  if (!(min_cluster_avg_rate_bps >= 0.0)) throw std::invalid_argument("minimum cluster rate must be nonnegative");
}

Eigen::VectorXd received_signal_psd(const Scenario& scenario, const AntennaParams& params, double frequency_hz,
                                    const LinkMask& mask) {
  if (mask.size() == 0) return received_signal_psd(scenario, params, frequency_hz);
  const int K = scenario.num_ues();
  const int M = scenario.num_aps();
  Eigen::VectorXd out(K);
  for (int k = 0; k < K; ++k) {
    double power = 0.0;
    for (int m = 0; m < M; ++m) {
      if (!mask(k, m)) continue;
      const double a = path_amplitude(frequency_hz, scenario.distances(k, m));
      power += gain(params, frequency_hz, scenario.angles(k, m)) * a * a;
    }
    out(k) = scenario.tx_psd(k) * power;
  }
  return out;
}

FrequencyLattice::FrequencyLattice(const Band& band, double grid_step_hz) : band_(band), spacing_(0.5 * grid_step_hz) {
  band.validate();
  if (!(grid_step_hz > 0.0)) throw std::invalid_argument("grid step must be positive");
  max_index_ = static_cast<long>(std::floor(band.width() / spacing_ + 1e-9));
  if (max_index_ < 1) throw std::invalid_argument("grid step is wider than the band");
}

long FrequencyLattice::nearest(double frequency_hz) const {
  const long n = std::lround((frequency_hz - band_.lower_hz) / spacing_);
  return std::clamp(n, 1L, max_index_);
}

BandwidthLimits make_limits(const Band& band, const QosConfig& qos, double grid_step_hz, double max_bandwidth_hz) {
  BandwidthLimits lim;
  lim.band = band;
  lim.grid_step_hz = grid_step_hz;
  lim.max_bandwidth_hz = max_bandwidth_hz;
  lim.min_rx_psd_db = 10.0 * std::log10(qos.min_rx_psd_w_per_hz);
  lim.coherence_gap_db = qos.coherence_gap_db;
  return lim;
}

double bandwidth_search(double center, const Scenario& scenario, const AntennaParams& params, const Band& band,
                        const QosConfig& qos, double grid_step_hz) {
  if (!(center > band.lower_hz && center <= band.upper_hz))
    throw std::invalid_argument("bandwidth_search: center outside the band");
  const auto lim = make_limits(band, qos, grid_step_hz, scenario.total_bandwidth_hz);
  return grow_bandwidth(
      center, [&](double f) { return to_db(received_signal_psd(scenario, params, f)); }, lim);
}

SubchannelPlan resolve_overlaps(std::span<const CandidateSubchannel> candidates, double grid_step_hz,
                                double total_bandwidth_hz) {
  std::vector<CandidateSubchannel> order;
  for (const auto& c : candidates)
    if (c.bandwidth_hz > 0.0) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.strength != b.strength) return a.strength > b.strength;
    return a.center_hz < b.center_hz;
  });

  // shrink against every stronger subchannel already placed
  std::vector<CandidateSubchannel> placed;
  for (auto c : order) {
    double half = 0.5 * c.bandwidth_hz;
    for (const auto& p : placed) {
      const double lo = p.center_hz - 0.5 * p.bandwidth_hz;
      const double hi = p.center_hz + 0.5 * p.bandwidth_hz;
      if (c.center_hz >= lo && c.center_hz <= hi) {
        half = 0.0;
        break;
      }
      half = std::min(half, c.center_hz < lo ? lo - c.center_hz : c.center_hz - hi);
    }
    const double steps = std::floor(2.0 * half / grid_step_hz + 1e-9);
    c.bandwidth_hz = std::min(c.bandwidth_hz, steps * grid_step_hz);
    if (c.bandwidth_hz > 0.0) placed.push_back(c);
  }

  // C1: weakest first give back bandwidth
  double excess = -total_bandwidth_hz;
  for (const auto& p : placed) excess += p.bandwidth_hz;
  for (auto it = placed.rbegin(); it != placed.rend() && excess > 0.0; ++it) {
    const double cut = std::min(it->bandwidth_hz, std::ceil(excess / grid_step_hz - 1e-9) * grid_step_hz);
    it->bandwidth_hz -= cut;
    excess -= cut;
  }

  SubchannelPlan plan;
  for (const auto& p : placed)
    if (p.bandwidth_hz > 0.0) plan.subchannels.push_back({p.center_hz, p.bandwidth_hz, 0.0});
  std::sort(plan.subchannels.begin(), plan.subchannels.end(),
            [](const auto& a, const auto& b) { return a.center_hz < b.center_hz; });
  return plan;
}

SubchannelPlan resolve_overlaps(std::span<const Subchannel> candidates, const Scenario& scenario,
                                const AntennaParams& params, double grid_step_hz) {
  std::vector<CandidateSubchannel> c;
  c.reserve(candidates.size());
  for (const auto& s : candidates)
    c.push_back({s.center_hz, s.bandwidth_hz, received_signal_psd(scenario, params, s.center_hz).sum()});
  return resolve_overlaps(c, grid_step_hz, scenario.total_bandwidth_hz);
}

PlanCheck check_plan(std::span<const Subchannel> subchannels, const Scenario& scenario, const AntennaParams& params,
                     const Band& band, const QosConfig& qos, const LinkMask& mask) {
  PlanCheck r;
  std::vector<Subchannel> sorted(subchannels.begin(), subchannels.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.center_hz < b.center_hz; });
  double total = 0.0;
  const double th_db = 10.0 * std::log10(qos.min_rx_psd_w_per_hz);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    total += s.bandwidth_hz;
    if (s.bandwidth_hz < 0.0 || s.center_hz < 0.0) r.nonnegative = false;
    if (i + 1 < sorted.size() && s.upper_edge() > sorted[i + 1].lower_edge()) r.disjoint = false;
    if (!(s.lower_edge() > band.lower_hz) || s.upper_edge() > band.upper_hz) {
      r.in_band = false;
      continue;
    }
    if (s.bandwidth_hz == 0.0) continue;
    const auto lo = to_db(received_signal_psd(scenario, params, s.lower_edge(), mask));
    const auto hi = to_db(received_signal_psd(scenario, params, s.upper_edge(), mask));
    const auto mid = to_db(received_signal_psd(scenario, params, s.center_hz, mask));
    for (Eigen::Index k = 0; k < lo.size(); ++k) {
      if (!(lo(k) >= th_db && hi(k) >= th_db && mid(k) >= th_db)) r.min_rx_psd = false;
      if (!(std::abs(lo(k) - hi(k)) < qos.coherence_gap_db)) r.coherence = false;
    }
  }
  if (total > scenario.total_bandwidth_hz) r.total_bandwidth = false;
  return r;
}

PlanCheck check_plan(const SubchannelPlan& plan, const Scenario& scenario, const AntennaParams& params,
                     const Band& band, const QosConfig& qos) {
  return check_plan(plan.subchannels, scenario, params, band, qos, LinkMask{});
}

SpectrumEvaluator::SpectrumEvaluator(Scenario scenario, const AntennaParams& params, const QosConfig& qos,
                                     const FrequencyLattice& lattice, LinkMask mask)
    : scenario_(std::move(scenario)),
      params_(params),
      lattice_(lattice),
      mask_(std::move(mask)),
      limits_(make_limits(lattice.band(), qos, lattice.grid_step(), scenario_.total_bandwidth_hz)),
      rss_db_(static_cast<std::size_t>(lattice.max_index() + 1)),
      total_rss_(static_cast<std::size_t>(lattice.max_index() + 1), std::numeric_limits<double>::quiet_NaN()),
      bandwidth_(static_cast<std::size_t>(lattice.max_index() + 1), std::numeric_limits<double>::quiet_NaN()) {
  if (mask_.size() != 0 && (mask_.rows() != scenario_.num_ues() || mask_.cols() != scenario_.num_aps()))
    throw std::invalid_argument("SpectrumEvaluator: mask shape mismatch");
}

const Eigen::VectorXd& SpectrumEvaluator::rss_db(long n) {
  auto& slot = rss_db_.at(static_cast<std::size_t>(n));
  if (slot.size() == 0) {
    const auto linear = received_signal_psd(scenario_, params_, lattice_.frequency(n), mask_);
    total_rss_[static_cast<std::size_t>(n)] = linear.sum();
    slot = to_db(linear);
  }
  return slot;
}

double SpectrumEvaluator::total_rss(long n) {
  rss_db(n);
  return total_rss_[static_cast<std::size_t>(n)];
}

double SpectrumEvaluator::coherent_bandwidth(long n) {
  auto& slot = bandwidth_.at(static_cast<std::size_t>(n));
  if (std::isnan(slot)) {
    slot = grow_bandwidth(
        lattice_.frequency(n), [this](double f) -> const Eigen::VectorXd& { return rss_db(lattice_.index_of(f)); },
        limits_);
  }
  return slot;
}

RateTable::RateTable(Scenario scenario, const AntennaParams& params, Precoder method, const FrequencyLattice& lattice,
                     bool fallback_to_mrt)
    : scenario_(std::move(scenario)),
      params_(params),
      method_(method),
      lattice_(lattice),
      fallback_(fallback_to_mrt),
      se_(static_cast<std::size_t>(lattice.max_index() + 1), std::numeric_limits<double>::quiet_NaN()) {}

double RateTable::spectral_efficiency(long n) {
  auto& slot = se_.at(static_cast<std::size_t>(n));
  if (std::isnan(slot)) {
    const double f = lattice_.frequency(n);
    try {
      slot = sscf::spectral_efficiency(scenario_, params_, f, method_);
    } catch (const SingularChannel&) {
      slot = fallback_ ? sscf::spectral_efficiency(scenario_, params_, f, Precoder::MRT)
                       : -std::numeric_limits<double>::infinity();
    }
  }
  return slot;
}

}  // namespace sscf
