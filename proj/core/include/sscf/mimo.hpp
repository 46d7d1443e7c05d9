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

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "sscf/antenna.hpp"
#include "sscf/plan.hpp"
#include "sscf/scenario.hpp"

namespace sscf {

enum class Precoder { MRT, ZF };

const char* to_string(Precoder p);
Precoder precoder_from_string(const std::string& s);

/// Effective K x M downlink channel at one frequency.
struct ChannelMatrix {
  Eigen::MatrixXcd entries;
  double frequency_hz = 0.0;
};

/// M x K precoder; column k is the unit-norm beam for UE k.
struct PrecodingMatrix {
  Eigen::MatrixXcd columns;
  Precoder method = Precoder::MRT;
};

/// Condition number of H H^H above which ZF is refused.
inline constexpr double kMaxGramCondition = 1e12;

/// Entry (k, m) = sqrt(|G(f, theta_km)|) * c/(4 pi f d_km) * exp(-j 2 pi f d_km / c).
ChannelMatrix build_channel(const Scenario& scenario, const AntennaParams& params, double frequency_hz);

/// MRT: F = H^H. ZF: F = H^H (H H^H)^-1, obtained from a Cholesky solve of
/// the Gram matrix against H. Columns are normalized to unit norm.
/// Throws SingularChannel for ZF when K > M or the Gram matrix is
/// ill-conditioned beyond kMaxGramCondition.
PrecodingMatrix precode(const ChannelMatrix& channel, Precoder method);

/// Per-UE SINR: q_k |h_k^T w_k|^2 / (sum_{j != k} q_j |h_k^T w_j|^2 + noise).
Eigen::VectorXd sinr(const ChannelMatrix& channel, const PrecodingMatrix& precoder, const Eigen::VectorXd& tx_psd,
                     double noise_psd);

/// sum_k log2(1 + gamma_k(f)) with a fresh channel and precoder at f.
double spectral_efficiency(const Scenario& scenario, const AntennaParams& params, double frequency_hz,
                           Precoder method);

/// Beam-matched received signal PSD per UE, q_k * ||h_k(f)||^2. This is the
/// quantity the minimum-power and coherence-gap constraints act on.
Eigen::VectorXd received_signal_psd(const Scenario& scenario, const AntennaParams& params, double frequency_hz);

/// Total rate sum_i B_i * sum_k log2(1 + gamma_k(f_i)).
double plan_rate(const SubchannelPlan& plan, const Scenario& scenario, const AntennaParams& params, Precoder method);

/// Fills per-subchannel rates and the plan's achieved rate.
void score_plan(SubchannelPlan& plan, const Scenario& scenario, const AntennaParams& params, Precoder method);

}  // namespace sscf
