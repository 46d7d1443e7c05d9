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

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sscf/antenna.hpp"
#include "sscf/mimo.hpp"
#include "sscf/plan.hpp"
#include "sscf/scenario.hpp"

namespace sscf {

/// Quality-of-service thresholds.
struct QosConfig {
  double min_rx_psd_w_per_hz = dbm_per_hz_to_watt(-174.0);  // C3, on the received signal PSD
  double coherence_gap_db = 0.5;                            // C4
  double min_cluster_avg_rate_bps = 50e6;                   // C6

  void validate() const;
};

/// K x M link selector; entry (k, m) true when AP m contributes to UE k.
using LinkMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Received signal PSD per UE, optionally restricted to masked links.
Eigen::VectorXd received_signal_psd(const Scenario& scenario, const AntennaParams& params, double frequency_hz,
                                    const LinkMask& mask);

/// Center-frequency lattice with spacing grid_step / 2 anchored at the
/// band's lower edge. Index 0 is the cutoff itself and is never used, so
/// valid indices run from 1 to max_index(). Every symmetric subchannel of
/// width j * grid_step centered on the lattice has its edges on the lattice.
class FrequencyLattice {
 public:
  FrequencyLattice(const Band& band, double grid_step_hz);

  double spacing() const { return spacing_; }
  double grid_step() const { return 2.0 * spacing_; }
  long max_index() const { return max_index_; }
  const Band& band() const { return band_; }

  double frequency(long n) const { return band_.lower_hz + static_cast<double>(n) * spacing_; }
  long nearest(double frequency_hz) const;
  /// Index of a frequency known to lie on the lattice.
  long index_of(double frequency_hz) const { return std::lround((frequency_hz - band_.lower_hz) / spacing_); }

 private:
  Band band_;
  double spacing_;
  long max_index_;
};

struct BandwidthLimits {
  Band band;
  double grid_step_hz = 10e6;
  double max_bandwidth_hz = 0.0;
  double min_rx_psd_db = 0.0;  // 10 log10(W/Hz)
  double coherence_gap_db = 0.5;
};

/// Grows a symmetric subchannel about `center` in grid_step increments and
/// returns the width reached before the first violation of: the band edges,
/// the bandwidth cap, the minimum received PSD at either edge, or the
/// per-UE dB gap between the two edges. `rss_db(f)` yields per-UE received
/// PSD in dB. Returns 0 if the center itself fails the minimum-PSD test.
template <class RssDb>
double grow_bandwidth(double center, RssDb&& rss_db, const BandwidthLimits& lim) {
  {
    const auto& mid = rss_db(center);
    for (Eigen::Index k = 0; k < mid.size(); ++k)
      if (!(mid(k) >= lim.min_rx_psd_db)) return 0.0;
  }
  double reached = 0.0;
  for (long j = 1;; ++j) {
    const double width = static_cast<double>(j) * lim.grid_step_hz;
    const double lo = center - 0.5 * width;
    const double hi = center + 0.5 * width;
    if (width > lim.max_bandwidth_hz || !(lo > lim.band.lower_hz) || hi > lim.band.upper_hz) break;
    const auto& a = rss_db(lo);
    const auto& b = rss_db(hi);
    bool ok = true;
    for (Eigen::Index k = 0; k < a.size() && ok; ++k)
      ok = a(k) >= lim.min_rx_psd_db && b(k) >= lim.min_rx_psd_db && std::abs(a(k) - b(k)) < lim.coherence_gap_db;
    if (!ok) break;
    reached = width;
  }
  return reached;
}

BandwidthLimits make_limits(const Band& band, const QosConfig& qos, double grid_step_hz, double max_bandwidth_hz);

/// Coherent bandwidth of a subchannel centered at `center` over the full
/// network (all links).
double bandwidth_search(double center, const Scenario& scenario, const AntennaParams& params, const Band& band,
                        const QosConfig& qos, double grid_step_hz);

struct CandidateSubchannel {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
  double strength = 0.0;  // total received PSD over UEs at the center
};

/// Makes candidates pairwise disjoint and caps the total bandwidth.
///
/// Candidates are processed in decreasing strength; each keeps its center
/// and is shrunk, in grid_step steps, until it no longer overlaps any
/// stronger one (dropped if its center lies inside a stronger interval).
/// If the total then exceeds total_bandwidth, the weakest subchannels give
/// up bandwidth first, again in grid_step steps. Output is sorted by center.
SubchannelPlan resolve_overlaps(std::span<const CandidateSubchannel> candidates, double grid_step_hz,
                                double total_bandwidth_hz);

/// Convenience overload computing strengths from the scenario.
SubchannelPlan resolve_overlaps(std::span<const Subchannel> candidates, const Scenario& scenario,
                                const AntennaParams& params, double grid_step_hz);

/// Result of checking a plan against the allocation constraints.
struct PlanCheck {
  bool total_bandwidth = true;  // C1
  bool disjoint = true;         // C2
  bool min_rx_psd = true;       // C3 at edges and center
  bool coherence = true;        // C4 at the edges
  bool nonnegative = true;      // C5
  bool in_band = true;

  bool ok() const { return total_bandwidth && disjoint && min_rx_psd && coherence && nonnegative && in_band; }
};

PlanCheck check_plan(std::span<const Subchannel> subchannels, const Scenario& scenario, const AntennaParams& params,
                     const Band& band, const QosConfig& qos, const LinkMask& mask);
PlanCheck check_plan(const SubchannelPlan& plan, const Scenario& scenario, const AntennaParams& params,
                     const Band& band, const QosConfig& qos);

/// Memoizes per-lattice-point received PSD and coherent bandwidth for one
/// scenario. Not thread-safe.
class SpectrumEvaluator {
 public:
  SpectrumEvaluator(Scenario scenario, const AntennaParams& params, const QosConfig& qos,
                    const FrequencyLattice& lattice, LinkMask mask = {});

  const FrequencyLattice& lattice() const { return lattice_; }
  const Eigen::VectorXd& rss_db(long n);
  double total_rss(long n);
  double coherent_bandwidth(long n);

 private:
  Scenario scenario_;
  AntennaParams params_;
  FrequencyLattice lattice_;
  LinkMask mask_;
  BandwidthLimits limits_;
  std::vector<Eigen::VectorXd> rss_db_;
  std::vector<double> total_rss_;
  std::vector<double> bandwidth_;
};

/// Memoizes sum_k log2(1 + gamma_k) per lattice point for one (sub)network.
/// With fallback_to_mrt, ZF failures are scored with MRT; otherwise they
/// are reported as -infinity.
class RateTable {
 public:
  RateTable(Scenario scenario, const AntennaParams& params, Precoder method, const FrequencyLattice& lattice,
            bool fallback_to_mrt = false);

  double spectral_efficiency(long n);
  const Scenario& scenario() const { return scenario_; }

 private:
  Scenario scenario_;
  AntennaParams params_;
  Precoder method_;
  FrequencyLattice lattice_;
  bool fallback_;
  std::vector<double> se_;
};

}  // namespace sscf
