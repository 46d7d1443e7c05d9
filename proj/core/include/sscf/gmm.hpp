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

#include <cstddef>
#include <span>
#include <vector>

#include "sscf/antenna.hpp"
#include "sscf/random.hpp"

namespace sscf {

/// One-dimensional Gaussian mixture over frequency (Hz).
struct Gmm {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> variances;

  std::size_t size() const { return weights.size(); }
  double mean() const;
  /// Throws std::invalid_argument unless weights lie on the simplex and
  /// variances are at least variance_floor.
  void validate(double variance_floor = 0.0) const;
};

/// Default variance floor: 1e-6 * (band width)^2.
double default_variance_floor(const Band& band);

/// Draws n values, resampling draws that fall outside the band.
std::vector<double> sample_gmm(const Gmm& gmm, std::size_t n, const Band& band, Rng& rng);

double log_likelihood(const Gmm& gmm, std::span<const double> data);

/// 3 * components * ln(N) - 2 ln L, with N the number of data points.
double bic(const Gmm& gmm, std::span<const double> data);

struct EmOptions {
  double variance_floor = 0.0;
  double relative_tolerance = 1e-6;
  int max_iterations = 100;
  /// Components whose responsibility mass falls below this are dropped.
  double min_component_mass = 1e-10;
};

struct EmResult {
  Gmm model;
  std::vector<double> log_likelihood;  // initial value, then one entry per iteration
  int iterations = 0;
  int removed_components = 0;
};

/// Expectation-maximization from `init`. Degenerate components (no
/// responsibility mass) are removed, which lowers the component count.
EmResult em_fit(std::span<const double> data, const Gmm& init, const EmOptions& options);

/// Deterministic starting point: sorted data split into equal-count strata.
Gmm quantile_init(std::span<const double> data, std::size_t components, double variance_floor);

/// Uniformly spaced equal-weight Gaussians tiling the band, moment-merged
/// into at most max_components contiguous strata.
Gmm initial_proposal(const Band& band, std::size_t num_samples, std::size_t max_components);

/// Fits 1..max_components and returns the lowest-BIC model.
struct ModelSelection {
  Gmm model;
  std::vector<double> bic_by_components;  // index c-1 holds BIC for c components (NaN if skipped)
  std::size_t selected = 0;
};
ModelSelection select_by_bic(std::span<const double> data, std::size_t max_components, const EmOptions& options);

/// Blends a fitted model into the previous one: each fitted component is
/// paired with the nearest previous component (by mean) and every parameter
/// becomes alpha * fitted + (1 - alpha) * previous. Weights are renormalized.
Gmm smooth(const Gmm& fitted, const Gmm& previous, double alpha, double variance_floor);

}  // namespace sscf
