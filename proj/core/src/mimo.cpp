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

#include "sscf/mimo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sscf/errors.hpp"

namespace sscf {

const char* to_string(Precoder p) { return p == Precoder::MRT ? "MRT" : "ZF"; }

Precoder precoder_from_string(const std::string& s) {
  if (s == "MRT" || s == "mrt") return Precoder::MRT;
  if (s == "ZF" || s == "zf") return Precoder::ZF;
  throw std::invalid_argument("unknown precoder '" + s + "'");
}

ChannelMatrix build_channel(const Scenario& scenario, const AntennaParams& params, double frequency_hz) {
  const int K = scenario.num_ues();
  const int M = scenario.num_aps();
  ChannelMatrix h;
  h.frequency_hz = frequency_hz;
  h.entries.resize(K, M);
  const double wavenumber = 2.0 * kPi * frequency_hz / kSpeedOfLight;
  for (int m = 0; m < M; ++m) {
    for (int k = 0; k < K; ++k) {
      const double d = scenario.distances(k, m);
      const double amp = std::sqrt(gain(params, frequency_hz, scenario.angles(k, m))) * path_amplitude(frequency_hz, d);
      h.entries(k, m) = std::polar(amp, -wavenumber * d);
    }
  }
  return h;
}

PrecodingMatrix precode(const ChannelMatrix& channel, Precoder method) {
  const auto& H = channel.entries;
  PrecodingMatrix out;
  out.method = method;
  if (method == Precoder::MRT) {
    out.columns = H.adjoint();
  } else {
    if (H.rows() > H.cols())
      throw SingularChannel("ZF needs K <= M (K=" + std::to_string(H.rows()) + ", M=" + std::to_string(H.cols()) + ")");
    const Eigen::MatrixXcd gram = H * H.adjoint();
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success) throw SingularChannel("Gram matrix is not positive definite");
    const double rcond = llt.rcond();
    if (!(rcond * kMaxGramCondition > 1.0)) throw SingularChannel("Gram matrix is ill-conditioned");
    // F^H = (H H^H)^-1 H since the Gram matrix is Hermitian
    out.columns = llt.solve(H).adjoint();
  }
  for (Eigen::Index k = 0; k < out.columns.cols(); ++k) {
    const double n = out.columns.col(k).norm();
    if (n > 0.0) out.columns.col(k) /= n;
  }
  return out;
}

Eigen::VectorXd sinr(const ChannelMatrix& channel, const PrecodingMatrix& precoder, const Eigen::VectorXd& tx_psd,
                     double noise_psd) {
  const auto& H = channel.entries;
  if (H.cols() != precoder.columns.rows() || H.rows() != precoder.columns.cols() || H.rows() != tx_psd.size())
    throw std::invalid_argument("sinr: dimension mismatch");
  const Eigen::MatrixXcd effective = H * precoder.columns;  // (k, j) = h_k^T w_j
  const Eigen::Index K = H.rows();
  Eigen::VectorXd gamma(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < K; ++j)
      if (j != k) interference += tx_psd(j) * std::norm(effective(k, j));
    gamma(k) = tx_psd(k) * std::norm(effective(k, k)) / (interference + noise_psd);
  }
  return gamma;
}

double spectral_efficiency(const Scenario& scenario, const AntennaParams& params, double frequency_hz,
                           Precoder method) {
  const auto h = build_channel(scenario, params, frequency_hz);
  const auto w = precode(h, method);
  const auto g = sinr(h, w, scenario.tx_psd, scenario.noise_psd);
  double se = 0.0;
  for (Eigen::Index k = 0; k < g.size(); ++k) se += std::log2(1.0 + g(k));
  return se;
}

Eigen::VectorXd received_signal_psd(const Scenario& scenario, const AntennaParams& params, double frequency_hz) {
  const int K = scenario.num_ues();
  const int M = scenario.num_aps();
  Eigen::VectorXd out(K);
  for (int k = 0; k < K; ++k) {
    double power = 0.0;
    for (int m = 0; m < M; ++m) {
      const double a = path_amplitude(frequency_hz, scenario.distances(k, m));
      power += gain(params, frequency_hz, scenario.angles(k, m)) * a * a;
    }
    out(k) = scenario.tx_psd(k) * power;
  }
  return out;
}

double plan_rate(const SubchannelPlan& plan, const Scenario& scenario, const AntennaParams& params, Precoder method) {
  double total = 0.0;
  for (const auto& s : plan.subchannels) {
    if (s.bandwidth_hz <= 0.0) continue;
    total += s.bandwidth_hz * spectral_efficiency(scenario, params, s.center_hz, method);
  }
  return total;
}

void score_plan(SubchannelPlan& plan, const Scenario& scenario, const AntennaParams& params, Precoder method) {
  double total = 0.0;
  for (auto& s : plan.subchannels) {
    s.rate_bps = s.bandwidth_hz > 0.0 ? s.bandwidth_hz * spectral_efficiency(scenario, params, s.center_hz, method) : 0.0;
    total += s.rate_bps;
  }
  plan.achieved_rate_bps = total;
}

}  // namespace sscf
