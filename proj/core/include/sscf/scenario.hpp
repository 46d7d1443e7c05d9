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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sscf {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Converts a PSD in dBm/Hz to W/Hz.
double dbm_per_hz_to_watt(double dbm_per_hz);

struct ScenarioConfig {
  double area_side_m = 200.0;
  int num_aps = 64;
  int num_ues = 10;
  double elev_diff_min_m = 7.0;
  double elev_diff_max_m = 10.0;
  double total_power_w = 2.0;
  double total_bandwidth_hz = 10e9;
  double noise_psd_w_per_hz = dbm_per_hz_to_watt(-168.0);
  std::uint64_t seed = 1;

  void validate() const;
};

/// Immutable network geometry. Matrices are K x M (UE rows, AP columns).
struct Scenario {
  std::vector<Point2> ap_positions;
  std::vector<Point2> ue_positions;
  Eigen::MatrixXd elev_diff;
  Eigen::MatrixXd angles;
  Eigen::MatrixXd distances;
  Eigen::VectorXd tx_psd;  // q_k, W/Hz
  double noise_psd = 0.0;  // W/Hz
  double total_bandwidth_hz = 0.0;

  int num_aps() const { return static_cast<int>(ap_positions.size()); }
  int num_ues() const { return static_cast<int>(ue_positions.size()); }

  /// Sub-network restricted to the listed APs and UEs, in the given order.
  Scenario restrict_to(std::span<const int> aps, std::span<const int> ues) const;
};

/// Draws AP/UE positions, per-AP elevation differences and per-link angles.
///
/// Every entity draws from its own keyed stream of the master seed, so
/// growing M or K leaves the existing draws untouched.
Scenario generate_scenario(const ScenarioConfig& config);

/// 3-D distance between an AP and a UE separated vertically by elev_diff.
double link_distance(Point2 ap, Point2 ue, double elev_diff_m);

}  // namespace sscf
