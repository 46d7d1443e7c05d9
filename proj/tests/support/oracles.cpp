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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Dense>

namespace oracle {

namespace {

constexpr double kC = 299792458.0;
const double kPi = std::acos(-1.0);

std::vector<int> iota_n(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

Eigen::MatrixXcd channel(const sscf::Scenario& s, const sscf::AntennaParams& p, double f, const std::vector<int>& aps,
                         const std::vector<int>& ues) {
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(ues.size()), static_cast<Eigen::Index>(aps.size()));
  for (std::size_t i = 0; i < ues.size(); ++i)
    for (std::size_t j = 0; j < aps.size(); ++j) {
      const double d = s.distances(ues[i], aps[j]);
      const double a = std::sqrt(oracle::gain(p, f, s.angles(ues[i], aps[j]))) * kC / (4.0 * kPi * f * d);
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a * std::exp(std::complex<double>(0.0, -2.0 * kPi * f * d / kC));
    }
  return h;
}

// Unit-norm precoder columns; empty when ZF is not applicable.
Eigen::MatrixXcd precoder(const Eigen::MatrixXcd& h, sscf::Precoder method) {
  Eigen::MatrixXcd w;
  if (method == sscf::Precoder::MRT) {
    w = h.adjoint();
  } else {
    if (h.rows() > h.cols()) return {};
    const Eigen::MatrixXcd gram = h * h.adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > 1e12) return {};
    w = h.adjoint() * gram.inverse();
  }
  for (Eigen::Index k = 0; k < w.cols(); ++k) w.col(k) /= w.col(k).norm();
  return w;
}

double se_of(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& w, const sscf::Scenario& s,
             const std::vector<int>& ues) {
  const Eigen::MatrixXcd e = h * w;
  double total = 0.0;
  for (Eigen::Index k = 0; k < e.rows(); ++k) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      if (j != k) interference += s.tx_psd(ues[static_cast<std::size_t>(j)]) * std::norm(e(k, j));
    const double sig = s.tx_psd(ues[static_cast<std::size_t>(k)]) * std::norm(e(k, k));
    total += std::log2(1.0 + sig / (interference + s.noise_psd));
  }
  return total;
}

double se_sub(const sscf::Scenario& s, const sscf::AntennaParams& p, double f, sscf::Precoder method,
              const std::vector<int>& aps, const std::vector<int>& ues, bool fallback) {
  const auto h = channel(s, p, f, aps, ues);
  auto w = precoder(h, method);
  if (w.size() == 0) {
    if (!fallback) return std::nan("");
    w = precoder(h, sscf::Precoder::MRT);
  }
  return se_of(h, w, s, ues);
}

std::vector<double> to_db(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = 10.0 * std::log10(v[i]);
  return out;
}

sscf::LinkMask cluster_mask(const sscf::Scenario& s, const sscf::Clustering& c) {
  sscf::LinkMask mask = sscf::LinkMask::Constant(s.num_ues(), s.num_aps(), false);
  for (int k = 0; k < s.num_ues(); ++k)
    for (int m : c.clusters[static_cast<std::size_t>(c.ue_to_cluster[static_cast<std::size_t>(k)])]) mask(k, m) = true;
  return mask;
}

std::vector<Candidate> candidates(const std::vector<double>& centers, const sscf::Scenario& s,
                                  const sscf::AntennaParams& p, const sscf::Band& band, const sscf::QosConfig& qos,
                                  double step, const sscf::LinkMask& mask) {
  std::vector<Candidate> out;
  for (double f : centers) {
    const auto psd = rx_psd(s, p, f, mask);
    out.push_back({f, bandwidth(f, s, p, band, qos, step, mask), std::accumulate(psd.begin(), psd.end(), 0.0)});
  }
  return out;
}

}  // namespace

double gain(const sscf::AntennaParams& p, double f, double theta) {
  const double k0 = 2.0 * kPi * f / kC;
  const double beta = k0 * std::sqrt(1.0 - (p.cutoff_hz / f) * (p.cutoff_hz / f));
  const std::complex<double> z =
      std::complex<double>(-k0 * std::cos(theta) + beta, -p.attenuation_rad_per_m) * (p.aperture_length_m / 2.0);
  return p.radiation_efficiency * p.aperture_length_m * std::abs(std::sin(z) / z);
}

std::vector<double> rx_psd(const sscf::Scenario& s, const sscf::AntennaParams& p, double f,
                           const sscf::LinkMask& mask) {
  std::vector<double> out(static_cast<std::size_t>(s.num_ues()), 0.0);
  for (int k = 0; k < s.num_ues(); ++k) {
    for (int m = 0; m < s.num_aps(); ++m) {
      if (mask.size() != 0 && !mask(k, m)) continue;
      const double a = kC / (4.0 * kPi * f * s.distances(k, m));
      out[static_cast<std::size_t>(k)] += oracle::gain(p, f, s.angles(k, m)) * a * a;
    }
    out[static_cast<std::size_t>(k)] *= s.tx_psd(k);
  }
  return out;
}

double bandwidth(double center, const sscf::Scenario& s, const sscf::AntennaParams& p, const sscf::Band& band,
                 const sscf::QosConfig& qos, double step, const sscf::LinkMask& mask) {
  const double th = 10.0 * std::log10(qos.min_rx_psd_w_per_hz);
  for (double v : to_db(rx_psd(s, p, center, mask)))
    if (!(v >= th)) return 0.0;
  long best = 0;
  for (long j = 1; j * step <= s.total_bandwidth_hz; ++j) {
    const double lo = center - 0.5 * static_cast<double>(j) * step;
    const double hi = center + 0.5 * static_cast<double>(j) * step;
    if (!(lo > band.lower_hz) || hi > band.upper_hz) break;
    const auto a = to_db(rx_psd(s, p, lo, mask));
    const auto b = to_db(rx_psd(s, p, hi, mask));
    bool ok = true;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!(a[k] >= th && b[k] >= th && std::fabs(a[k] - b[k]) < qos.coherence_gap_db)) ok = false;
    if (!ok) break;
    best = j;
  }
  return static_cast<double>(best) * step;
}

double spectral_efficiency(const sscf::Scenario& s, const sscf::AntennaParams& p, double f, sscf::Precoder method) {
  return se_sub(s, p, f, method, iota_n(s.num_aps()), iota_n(s.num_ues()), false);
}

Eigen::MatrixXcd effective_channel(const sscf::Scenario& s, const sscf::AntennaParams& p, double f,
                                   sscf::Precoder method) {
  const auto h = channel(s, p, f, iota_n(s.num_aps()), iota_n(s.num_ues()));
  return h * precoder(h, method);
}

std::vector<sscf::Subchannel> resolve(std::vector<Candidate> cands, double step, double total) {
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.strength != b.strength) return a.strength > b.strength;
    return a.center < b.center;
  });
  struct Placed {
    double center;
    long steps;
  };
  std::vector<Placed> placed;
  for (const auto& c : cands) {
    long j = std::lround(c.width / step);
    auto overlaps = [&](long jj) {
      for (const auto& q : placed) {
        const double lo = std::max(c.center - 0.5 * jj * step, q.center - 0.5 * q.steps * step);
        const double hi = std::min(c.center + 0.5 * jj * step, q.center + 0.5 * q.steps * step);
        if (lo < hi) return true;
        if (std::fabs(c.center - q.center) <= 0.5 * q.steps * step) return true;  // center covered
      }
      return false;
    };
    while (j > 0 && overlaps(j)) --j;
    if (j > 0) placed.push_back({c.center, j});
  }
  long budget = static_cast<long>(std::floor(total / step + 1e-9));
  long used = 0;
  for (const auto& q : placed) used += q.steps;
  for (auto it = placed.rbegin(); it != placed.rend() && used > budget;) {
    if (it->steps == 0) {
      ++it;
      continue;
    }
    --it->steps;
    --used;
  }
  std::vector<sscf::Subchannel> out;
  for (const auto& q : placed)
    if (q.steps > 0) out.push_back({q.center, static_cast<double>(q.steps) * step, 0.0});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.center_hz < b.center_hz; });
  return out;
}

std::vector<double> coarse_grid(const sscf::Band& band, int points, double step) {
  std::vector<double> out;
  const double half = 0.5 * step;
  for (int i = 0; i < points; ++i) {
    const double f = band.lower_hz + (i + 0.5) * band.width() / points;
    out.push_back(band.lower_hz + std::round((f - band.lower_hz) / half) * half);
  }
  return out;
}

GridPlan plan_for(const std::vector<double>& centers, const sscf::Scenario& s, const sscf::AntennaParams& p,
                  const sscf::Band& band, const sscf::QosConfig& qos, double step, sscf::Precoder method) {
  GridPlan g;
  for (auto sub : resolve(candidates(centers, s, p, band, qos, step, {}), step, s.total_bandwidth_hz)) {
    const double se = oracle::spectral_efficiency(s, p, sub.center_hz, method);
    if (!std::isfinite(se)) continue;
    sub.rate_bps = sub.bandwidth_hz * se;
    g.rate += sub.rate_bps;
    g.subchannels.push_back(sub);
  }
  return g;
}

GridPlan pair_optimum(const std::vector<double>& grid, const sscf::Scenario& s, const sscf::AntennaParams& p,
                      const sscf::Band& band, const sscf::QosConfig& qos, double step, sscf::Precoder method) {
  const auto cands = candidates(grid, s, p, band, qos, step, {});
  std::vector<double> se(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) se[i] = oracle::spectral_efficiency(s, p, grid[i], method);
  auto se_at = [&](double f) {
    return se[static_cast<std::size_t>(std::find(grid.begin(), grid.end(), f) - grid.begin())];
  };
  GridPlan best;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j) {
      GridPlan g;
      for (auto sub : resolve({cands[i], cands[j]}, step, s.total_bandwidth_hz)) {
        const double e = se_at(sub.center_hz);
        if (!std::isfinite(e)) continue;
        sub.rate_bps = sub.bandwidth_hz * e;
        g.rate += sub.rate_bps;
        g.subchannels.push_back(sub);
      }
      if (g.rate > best.rate) best = std::move(g);
    }
  return best;
}

double cluster_rate(const sscf::Subchannel& sub, const sscf::Scenario& s, const sscf::AntennaParams& p,
                    sscf::Precoder method, const std::vector<int>& aps, const std::vector<int>& ues) {
  if (ues.empty() || sub.bandwidth_hz <= 0.0) return 0.0;
  return sub.bandwidth_hz * se_sub(s, p, sub.center_hz, method, aps, ues, true);
}

ClusterOptimum clustered_pair_optimum(const std::vector<double>& grid, const sscf::Scenario& s,
                                      const sscf::AntennaParams& p, const sscf::Band& band,
                                      const sscf::QosConfig& qos, double step, sscf::Precoder method,
                                      const sscf::Clustering& clustering) {
  const auto mask = cluster_mask(s, clustering);
  const std::size_t Z = clustering.clusters.size();
  std::vector<std::vector<int>> ues(Z);
  for (int k = 0; k < s.num_ues(); ++k)
    ues[static_cast<std::size_t>(clustering.ue_to_cluster[static_cast<std::size_t>(k)])].push_back(k);

  const auto cands = candidates(grid, s, p, band, qos, step, mask);
  std::vector<std::vector<double>> se(grid.size(), std::vector<double>(Z));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t z = 0; z < Z; ++z)
      se[i][z] = cluster_rate({grid[i], 1.0, 0.0}, s, p, method, clustering.clusters[z], ues[z]);
  auto index_of = [&](double f) { return static_cast<std::size_t>(std::find(grid.begin(), grid.end(), f) - grid.begin()); };

  ClusterOptimum best;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j) {
      const auto subs = resolve({cands[i], cands[j]}, step, s.total_bandwidth_hz);
      std::vector<std::vector<double>> r(subs.size(), std::vector<double>(Z));
      for (std::size_t a = 0; a < subs.size(); ++a)
        for (std::size_t z = 0; z < Z; ++z) r[a][z] = subs[a].bandwidth_hz * se[index_of(subs[a].center_hz)][z];
      std::size_t combos = 1;
      for (std::size_t a = 0; a < subs.size(); ++a) combos *= Z;
      for (std::size_t code = 0; code < combos; ++code) {
        std::vector<double> per(Z, 0.0);
        std::size_t c = code;
        for (std::size_t a = 0; a < subs.size(); ++a, c /= Z) per[c % Z] += r[a][c % Z];
        const double total = std::accumulate(per.begin(), per.end(), 0.0);
        bool feasible = true;
        for (std::size_t z = 0; z < Z; ++z)
          if (!ues[z].empty() && per[z] / static_cast<double>(ues[z].size()) < qos.min_cluster_avg_rate_bps)
            feasible = false;
        best.best_rate = std::max(best.best_rate, total);
        if (feasible) {
          best.any_feasible = true;
          best.best_feasible_rate = std::max(best.best_feasible_rate, total);
        }
      }
    }
  return best;
}

}  // namespace oracle
