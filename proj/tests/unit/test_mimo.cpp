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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sscf/errors.hpp"
#include "sscf/mimo.hpp"

namespace {

using sscf::Precoder;

sscf::Scenario make(int M, int K, std::uint64_t seed) {
  sscf::ScenarioConfig c;
  c.num_aps = M;
  c.num_ues = K;
  c.seed = seed;
  return sscf::generate_scenario(c);
}

TEST(Channel, EntryMatchesFreeSpaceModel) {
  const auto s = make(4, 2, 11);
  const sscf::AntennaParams p;
  const double f = 150e9;
  const auto h = sscf::build_channel(s, p, f);
  const double d = s.distances(1, 3);
  const double amp = std::sqrt(oracle::gain(p, f, s.angles(1, 3))) * 299792458.0 / (4.0 * sscf::kPi * f * d);
  EXPECT_NEAR(std::abs(h.entries(1, 3)), amp, 1e-12 * amp);
  const double phase = std::remainder(-2.0 * sscf::kPi * f * d / 299792458.0, 2.0 * sscf::kPi);
  EXPECT_NEAR(std::remainder(std::arg(h.entries(1, 3)) - phase, 2.0 * sscf::kPi), 0.0, 1e-6);
}

TEST(Precoding, ZeroForcingNullsCrossTerms) {
  const sscf::AntennaParams p;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = make(16, 4, seed);
    const auto h = sscf::build_channel(s, p, 150e9);
    const auto w = sscf::precode(h, Precoder::ZF);
    const Eigen::MatrixXcd e = h.entries * w.columns;
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j)
        if (j != k) EXPECT_LT(std::abs(e(k, j)) / std::abs(e(k, k)), 1e-8);
  }
}

TEST(Precoding, ColumnsHaveUnitNorm) {
  const sscf::AntennaParams p;
  const auto s = make(16, 4, 3);
  const auto h = sscf::build_channel(s, p, 130e9);
  for (auto method : {Precoder::MRT, Precoder::ZF}) {
    const auto w = sscf::precode(h, method);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(w.columns.col(k).norm(), 1.0, 1e-12);
  }
}

TEST(Precoding, ZeroForcingNeedsEnoughAps) {
  const sscf::AntennaParams p;
  const auto s = make(2, 3, 1);
  EXPECT_THROW(sscf::precode(sscf::build_channel(s, p, 150e9), Precoder::ZF), sscf::SingularChannel);
}

TEST(Precoding, ColocatedUesAreSingular) {
  auto s = make(8, 2, 1);
  s.ue_positions[1] = s.ue_positions[0];
  s.angles.row(1) = s.angles.row(0);
  s.distances.row(1) = s.distances.row(0);
  s.elev_diff.row(1) = s.elev_diff.row(0);
  const sscf::AntennaParams p;
  EXPECT_THROW(sscf::precode(sscf::build_channel(s, p, 150e9), Precoder::ZF), sscf::SingularChannel);
}

TEST(Sinr, SingleUeMrtIsChannelPowerOverNoise) {
  const auto s = make(6, 1, 9);
  const sscf::AntennaParams p;
  const auto h = sscf::build_channel(s, p, 140e9);
  const auto g = sscf::sinr(h, sscf::precode(h, Precoder::MRT), s.tx_psd, s.noise_psd);
  const double expected = s.tx_psd(0) * h.entries.row(0).squaredNorm() / s.noise_psd;
  EXPECT_NEAR(g(0), expected, 1e-10 * expected);
}

TEST(Sinr, SpectralEfficiencyMatchesOracle) {
  const sscf::AntennaParams p;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = make(12, 4, seed);
    for (double f : {105e9, 150e9, 195e9})
      for (auto method : {Precoder::MRT, Precoder::ZF}) {
        const double ref = oracle::spectral_efficiency(s, p, f, method);
        EXPECT_NEAR(sscf::spectral_efficiency(s, p, f, method), ref, 1e-9 * ref);
      }
  }
}

TEST(Sinr, ZeroForcingBeatsMatchedFilterAtDeskScale) {
  const sscf::AntennaParams p;
  const auto s = make(64, 10, 4);
  EXPECT_GT(sscf::spectral_efficiency(s, p, 120e9, Precoder::ZF), sscf::spectral_efficiency(s, p, 120e9, Precoder::MRT));
}

TEST(PlanRate, AdditiveOverSubchannels) {
  const sscf::AntennaParams p;
  const auto s = make(8, 2, 2);
  sscf::SubchannelPlan a{{{120e9, 1e9, 0.0}}, 0.0};
  sscf::SubchannelPlan b{{{160e9, 2e9, 0.0}}, 0.0};
  sscf::SubchannelPlan both{{{120e9, 1e9, 0.0}, {160e9, 2e9, 0.0}}, 0.0};
  const double ra = sscf::plan_rate(a, s, p, Precoder::ZF);
  const double rb = sscf::plan_rate(b, s, p, Precoder::ZF);
  EXPECT_NEAR(sscf::plan_rate(both, s, p, Precoder::ZF), ra + rb, 1e-9 * (ra + rb));
  sscf::score_plan(both, s, p, Precoder::ZF);
  EXPECT_NEAR(both.subchannels[0].rate_bps, ra, 1e-9 * ra);
  EXPECT_NEAR(both.achieved_rate_bps, ra + rb, 1e-9 * (ra + rb));
}

TEST(PlanRate, ZeroWidthContributesNothing) {
  const sscf::AntennaParams p;
  const auto s = make(8, 2, 2);
  sscf::SubchannelPlan plan{{{150e9, 0.0, 0.0}}, 0.0};
  EXPECT_EQ(sscf::plan_rate(plan, s, p, Precoder::ZF), 0.0);
}

TEST(ReceivedPsd, MatchesOracle) {
  const sscf::AntennaParams p;
  const auto s = make(10, 3, 8);
  const auto got = sscf::received_signal_psd(s, p, 133e9);
  const auto ref = oracle::rx_psd(s, p, 133e9);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(got(k), ref[k], 1e-10 * ref[k]);
}

TEST(PrecoderNames, RoundTrip) {
  EXPECT_EQ(sscf::precoder_from_string("ZF"), Precoder::ZF);
  EXPECT_EQ(sscf::precoder_from_string("mrt"), Precoder::MRT);
  EXPECT_STREQ(sscf::to_string(Precoder::MRT), "MRT");
  EXPECT_THROW(sscf::precoder_from_string("MMSE"), std::invalid_argument);
}

}  // namespace
