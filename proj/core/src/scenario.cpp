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

#include "sscf/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "sscf/antenna.hpp"
#include "sscf/random.hpp"

namespace sscf {

double dbm_per_hz_to_watt(double dbm_per_hz) { return std::pow(10.0, dbm_per_hz / 10.0) * 1e-3; }

void ScenarioConfig::validate() const {
  if (!(area_side_m > 0.0)) throw std::invalid_argument("area side must be positive");
  if (num_aps < 1) throw std::invalid_argument("need at least one AP");
  if (num_ues < 1) throw std::invalid_argument("need at least one UE");
  if (!(elev_diff_min_m > 0.0 && elev_diff_min_m < elev_diff_max_m))
    throw std::invalid_argument("elevation range must satisfy 0 < low < high");
  if (!(total_power_w > 0.0)) throw std::invalid_argument("total power must be positive");
  if (!(total_bandwidth_hz > 0.0)) throw std::invalid_argument("total bandwidth must be positive");
  if (!(noise_psd_w_per_hz > 0.0)) throw std::invalid_argument("noise PSD must be positive");
}

double link_distance(Point2 ap, Point2 ue, double elev_diff_m) {
  const double dx = ap.x - ue.x;
  const double dy = ap.y - ue.y;
  return std::sqrt(dx * dx + dy * dy + elev_diff_m * elev_diff_m);
}

Scenario generate_scenario(const ScenarioConfig& config) {
  config.validate();
  const int M = config.num_aps;
  const int K = config.num_ues;
  const auto seed = config.seed;

  Scenario s;
  s.ap_positions.resize(M);
  s.ue_positions.resize(K);
  std::vector<double> ap_height(M);
  for (int m = 0; m < M; ++m) {
    KeyedStream pos(derive_key(seed, {static_cast<std::uint64_t>(Stream::kApPosition), std::uint64_t(m)}));
    s.ap_positions[m] = {pos.uniform(0, 0.0, config.area_side_m), pos.uniform(1, 0.0, config.area_side_m)};
    KeyedStream h(derive_key(seed, {static_cast<std::uint64_t>(Stream::kApHeight), std::uint64_t(m)}));
    ap_height[m] = h.uniform(0, config.elev_diff_min_m, config.elev_diff_max_m);
  }
  for (int k = 0; k < K; ++k) {
    KeyedStream pos(derive_key(seed, {static_cast<std::uint64_t>(Stream::kUePosition), std::uint64_t(k)}));
    s.ue_positions[k] = {pos.uniform(0, 0.0, config.area_side_m), pos.uniform(1, 0.0, config.area_side_m)};
  }

  s.elev_diff.resize(K, M);
  s.angles.resize(K, M);
  s.distances.resize(K, M);
  for (int k = 0; k < K; ++k) {
    for (int m = 0; m < M; ++m) {
      KeyedStream a(derive_key(seed, {static_cast<std::uint64_t>(Stream::kLinkAngle), std::uint64_t(k),
                                      std::uint64_t(m)}));
      s.elev_diff(k, m) = ap_height[m];
      s.angles(k, m) = a.uniform(0, 0.0, kPi / 2.0);
      s.distances(k, m) = link_distance(s.ap_positions[m], s.ue_positions[k], ap_height[m]);
    }
  }
  s.tx_psd = Eigen::VectorXd::Constant(K, config.total_power_w / config.total_bandwidth_hz);
  s.noise_psd = config.noise_psd_w_per_hz;
  s.total_bandwidth_hz = config.total_bandwidth_hz;
  return s;
}

Scenario Scenario::restrict_to(std::span<const int> aps, std::span<const int> ues) const {
  Scenario out;
  out.noise_psd = noise_psd;
  out.total_bandwidth_hz = total_bandwidth_hz;
  const auto M = static_cast<Eigen::Index>(aps.size());
  const auto K = static_cast<Eigen::Index>(ues.size());
  out.ap_positions.reserve(aps.size());
  out.ue_positions.reserve(ues.size());
  for (int m : aps) out.ap_positions.push_back(ap_positions.at(m));
  for (int k : ues) out.ue_positions.push_back(ue_positions.at(k));
  out.elev_diff.resize(K, M);
  out.angles.resize(K, M);
  out.distances.resize(K, M);
  out.tx_psd.resize(K);
  for (Eigen::Index i = 0; i < K; ++i) {
    out.tx_psd(i) = tx_psd(ues[i]);
    for (Eigen::Index j = 0; j < M; ++j) {
      out.elev_diff(i, j) = elev_diff(ues[i], aps[j]);
      out.angles(i, j) = angles(ues[i], aps[j]);
      out.distances(i, j) = distances(ues[i], aps[j]);
    }
  }
  return out;
}

}  // namespace sscf
