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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "sscf/gmm.hpp"

namespace {

const sscf::Band kBand{100e9, 200e9};

std::vector<double> two_modes(std::uint64_t seed, std::size_t n, double a = 110e9, double b = 180e9,
                              double sigma = 1e9) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> na(a, sigma);
  std::normal_distribution<double> nb(b, sigma);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i % 2 ? na(rng) : nb(rng));
  return out;
}

sscf::EmOptions options() {
  sscf::EmOptions o;
  o.variance_floor = sscf::default_variance_floor(kBand);
  return o;
}

TEST(Gmm, ValidateChecksSimplexAndFloor) {
  sscf::Gmm g{{0.5, 0.5}, {120e9, 160e9}, {1e18, 1e18}};
  EXPECT_NO_THROW(g.validate(1e10));
  g.weights = {0.7, 0.5};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.weights = {0.5, 0.5};
  g.variances = {1.0, 1e18};
  EXPECT_THROW(g.validate(1e10), std::invalid_argument);
  EXPECT_DOUBLE_EQ((sscf::Gmm{{0.25, 0.75}, {100.0, 200.0}, {1.0, 1.0}}.mean()), 175.0);
}

TEST(Gmm, SamplesStayInBand) {
  const sscf::Gmm g{{0.5, 0.5}, {101e9, 199e9}, {25e18, 25e18}};
  sscf::Rng rng(3);
  for (double f : sscf::sample_gmm(g, 5000, kBand, rng)) {
    EXPECT_GT(f, kBand.lower_hz);
    EXPECT_LE(f, kBand.upper_hz);
  }
}

TEST(Gmm, SamplingIsDeterministic) {
  const sscf::Gmm g{{1.0}, {150e9}, {1e20}};
  sscf::Rng a(9), b(9);
  EXPECT_EQ(sscf::sample_gmm(g, 100, kBand, a), sscf::sample_gmm(g, 100, kBand, b));
}

TEST(Gmm, LogLikelihoodOfSingleGaussian) {
  const sscf::Gmm g{{1.0}, {0.0}, {1.0}};
  const std::vector<double> x{0.0, 1.0};
  const double expected = -std::log(2.0 * M_PI) - 0.5;
  EXPECT_NEAR(sscf::log_likelihood(g, x), expected, 1e-12);
  EXPECT_NEAR(sscf::bic(g, x), 3.0 * std::log(2.0) - 2.0 * expected, 1e-12);
}

TEST(Em, LogLikelihoodIsNondecreasing) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> modes(1, 4);
    std::uniform_real_distribution<double> centre(105e9, 195e9);
    std::vector<double> data;
    const int m = modes(rng);
    for (int j = 0; j < m; ++j) {
      std::normal_distribution<double> n(centre(rng), 2e9);
      for (int i = 0; i < 20; ++i) data.push_back(n(rng));
    }
    const auto init = sscf::quantile_init(data, 3, options().variance_floor);
    const auto fit = sscf::em_fit(data, init, options());
    for (std::size_t i = 1; i < fit.log_likelihood.size(); ++i)
      EXPECT_GE(fit.log_likelihood[i], fit.log_likelihood[i - 1] - 1e-9) << "seed " << seed << " step " << i;
  }
}

TEST(Em, RecoversTwoSeparatedModes) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = two_modes(seed, 80);
    const auto fit = sscf::em_fit(data, sscf::quantile_init(data, 2, options().variance_floor), options());
    if (fit.model.size() != 2) continue;
    auto means = fit.model.means;
    std::sort(means.begin(), means.end());
    if (std::fabs(means[0] - 110e9) < 0.5e9 && std::fabs(means[1] - 180e9) < 0.5e9) ++hits;
  }
  EXPECT_GE(hits, 18);
}

TEST(Em, VarianceFloorHoldsOnDegenerateData) {
  const std::vector<double> data(30, 150e9);
  const auto fit = sscf::em_fit(data, sscf::quantile_init(data, 2, options().variance_floor), options());
  for (double v : fit.model.variances) EXPECT_GE(v, options().variance_floor);
  EXPECT_NO_THROW(fit.model.validate(options().variance_floor));
}

TEST(Bic, PrefersTwoComponentsOnSeparatedModes) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = two_modes(seed + 100, 80);
    const auto sel = sscf::select_by_bic(data, 5, options());
    if (sel.selected == 2) ++hits;
    ASSERT_EQ(sel.bic_by_components.size(), 5u);
  }
  EXPECT_GE(hits, 18);
}

TEST(Bic, PrefersOneComponentOnUnimodalData) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(150e9, 3e9);
  std::vector<double> data(80);
  for (auto& x : data) x = n(rng);
  EXPECT_EQ(sscf::select_by_bic(data, 5, options()).selected, 1u);
}

TEST(QuantileInit, SplitsSortedData) {
  const std::vector<double> data{4.0, 1.0, 3.0, 2.0};
  const auto g = sscf::quantile_init(data, 2, 1e-6);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g.means[0], 1.5);
  EXPECT_DOUBLE_EQ(g.means[1], 3.5);
  EXPECT_DOUBLE_EQ(g.weights[0], 0.5);
}

TEST(InitialProposal, CoversBandWithCappedComponents) {
  const auto g = sscf::initial_proposal(kBand, 50, 5);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_NEAR(g.mean(), 150e9, 1e-3);
  EXPECT_NEAR(std::accumulate(g.weights.begin(), g.weights.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(sscf::initial_proposal(kBand, 50, 1).size(), 1u);
}

TEST(Smooth, BlendsTowardPreviousAndKeepsSimplex) {
  const sscf::Gmm prev{{0.5, 0.5}, {120e9, 180e9}, {4e18, 4e18}};
  const sscf::Gmm fit{{1.0}, {130e9}, {1e18}};
  const auto s = sscf::smooth(fit, prev, 0.7, 1e6);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s.means[0], 0.7 * 130e9 + 0.3 * 120e9, 1e-3);
  EXPECT_NEAR(s.variances[0], 0.7 * 1e18 + 0.3 * 4e18, 1e3);
  EXPECT_DOUBLE_EQ(s.weights[0], 1.0);
  const auto same = sscf::smooth(prev, prev, 0.7, 1e6);
  EXPECT_NEAR(same.means[1], 180e9, 1e-3);
}

}  // namespace
