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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sscf/allocator.hpp"
#include "sscf/errors.hpp"

namespace {

const sscf::Band kBand{100e9, 200e9};

sscf::Scenario make(int M, int K, std::uint64_t seed) {
  sscf::ScenarioConfig c;
  c.num_aps = M;
  c.num_ues = K;
  c.seed = seed;
  return sscf::generate_scenario(c);
}

sscf::CeHyperparams small_hyper(int subchannels) {
  sscf::CeHyperparams h;
  h.num_subchannels = subchannels;
  return h;
}

TEST(Hyperparams, Validation) {
  sscf::CeHyperparams h;
  EXPECT_NO_THROW(h.validate());
  h.num_elites = h.num_samples;
  EXPECT_THROW(h.validate(), std::invalid_argument);
  h = {};
  h.smoothing = 0.0;
  EXPECT_THROW(h.validate(), std::invalid_argument);
  h = {};
  h.max_components = 0;
  EXPECT_THROW(h.validate(), std::invalid_argument);
}

TEST(Allocate, SameSeedSamePlan) {
  const auto s = make(16, 4, 3);
  const sscf::AntennaParams p;
  sscf::Rng a(sscf::make_rng(3, sscf::Stream::kOptimizer));
  sscf::Rng b(sscf::make_rng(3, sscf::Stream::kOptimizer));
  const auto ra = sscf::allocate(s, p, kBand, sscf::Precoder::ZF, small_hyper(4), {}, a);
  const auto rb = sscf::allocate(s, p, kBand, sscf::Precoder::ZF, small_hyper(4), {}, b);
  ASSERT_EQ(ra.plan.subchannels.size(), rb.plan.subchannels.size());
  for (std::size_t i = 0; i < ra.plan.subchannels.size(); ++i) {
    EXPECT_EQ(ra.plan.subchannels[i].center_hz, rb.plan.subchannels[i].center_hz);
    EXPECT_EQ(ra.plan.subchannels[i].bandwidth_hz, rb.plan.subchannels[i].bandwidth_hz);
  }
  EXPECT_EQ(ra.plan.achieved_rate_bps, rb.plan.achieved_rate_bps);
}

TEST(Allocate, PlanSatisfiesConstraintsAndRateIsConsistent) {
  const sscf::AntennaParams p;
  const sscf::QosConfig qos;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto s = make(16, 4, seed);
    auto rng = sscf::make_rng(seed, sscf::Stream::kOptimizer);
    const auto r = sscf::allocate(s, p, kBand, sscf::Precoder::ZF, small_hyper(6), qos, rng);
    const auto check = sscf::check_plan(r.plan, s, p, kBand, qos);
    EXPECT_TRUE(check.ok()) << "seed " << seed;
    EXPECT_LE(r.plan.total_bandwidth(), s.total_bandwidth_hz);
    const double rate = sscf::plan_rate(r.plan, s, p, sscf::Precoder::ZF);
    EXPECT_NEAR(r.plan.achieved_rate_bps, rate, 1e-9 * rate);
  }
}

TEST(Allocate, BestTraceIsMonotone) {
  const auto s = make(16, 4, 8);
  const sscf::AntennaParams p;
  auto rng = sscf::make_rng(8, sscf::Stream::kOptimizer);
  const auto r = sscf::allocate(s, p, kBand, sscf::Precoder::MRT, small_hyper(4), {}, rng);
  ASSERT_EQ(r.best_trace.size(), 30u);
  for (std::size_t i = 1; i < r.best_trace.size(); ++i) EXPECT_GE(r.best_trace[i], r.best_trace[i - 1]);
  EXPECT_EQ(r.best_trace.back(), r.plan.achieved_rate_bps);
}

TEST(Allocate, SingleComponentProposalStaysSingle) {
  const auto s = make(16, 4, 2);
  const sscf::AntennaParams p;
  auto h = small_hyper(4);
  h.max_components = 1;
  auto rng = sscf::make_rng(2, sscf::Stream::kOptimizer);
  const auto r = sscf::allocate(s, p, kBand, sscf::Precoder::ZF, h, {}, rng);
  EXPECT_EQ(r.final_model.size(), 1u);
  for (auto c : r.selected_components) EXPECT_LE(c, 1u);
}

TEST(Allocate, UnreachableFloorIsInfeasible) {
  const auto s = make(8, 2, 1);
  const sscf::AntennaParams p;
  sscf::QosConfig qos;
  qos.min_rx_psd_w_per_hz = 1.0;
  auto h = small_hyper(2);
  h.max_iterations = 3;
  auto rng = sscf::make_rng(1, sscf::Stream::kOptimizer);
  EXPECT_THROW(sscf::allocate(s, p, kBand, sscf::Precoder::ZF, h, qos, rng), sscf::InfeasibleBand);
}

TEST(Allocate, ReachesCoarseGridOptimum) {
  const sscf::AntennaParams p;
  const sscf::QosConfig qos;
  const auto grid = oracle::coarse_grid(kBand, 50, 10e6);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = make(4, 2, seed);
    const auto best = oracle::pair_optimum(grid, s, p, kBand, qos, 10e6, sscf::Precoder::ZF);
    auto rng = sscf::make_rng(seed, sscf::Stream::kOptimizer);
    const auto r = sscf::allocate(s, p, kBand, sscf::Precoder::ZF, small_hyper(2), qos, rng);
    if (r.plan.achieved_rate_bps >= 0.95 * best.rate) ++hits;
  }
  EXPECT_GE(hits, 4);
}

TEST(EvaluateCenters, MatchesOraclePipeline) {
  const sscf::AntennaParams p;
  const sscf::QosConfig qos;
  const auto s = make(6, 2, 5);
  const sscf::FrequencyLattice lat(kBand, 10e6);
  sscf::SpectrumEvaluator spectrum(s, p, qos, lat);
  sscf::RateTable rates(s, p, sscf::Precoder::ZF, lat);
  const std::vector<double> centers{lat.frequency(1500), lat.frequency(1700), lat.frequency(9000)};
  const auto got = sscf::evaluate_centers(centers, spectrum, rates, s.total_bandwidth_hz);
  const auto ref = oracle::plan_for(centers, s, p, kBand, qos, 10e6, sscf::Precoder::ZF);
  ASSERT_EQ(got.subchannels.size(), ref.subchannels.size());
  for (std::size_t i = 0; i < ref.subchannels.size(); ++i) {
    EXPECT_EQ(got.subchannels[i].center_hz, ref.subchannels[i].center_hz);
    EXPECT_NEAR(got.subchannels[i].bandwidth_hz, ref.subchannels[i].bandwidth_hz, 1.0);
  }
  EXPECT_NEAR(got.achieved_rate_bps, ref.rate, 1e-9 * ref.rate);
}

}  // namespace
