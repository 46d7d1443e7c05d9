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

#include "sscf/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sscf {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double log_normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * (kLog2Pi + std::log(variance) + d * d / variance);
}

double log_sum_exp(std::span<const double> v) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : v) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

// Fills log responsibilities (row-major N x C) and returns the log-likelihood.
double expectation(const Gmm& g, std::span<const double> data, std::vector<double>& log_resp) {
  const std::size_t C = g.size();
  log_resp.resize(data.size() * C);
  std::vector<double> row(C);
  double ll = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    for (std::size_t c = 0; c < C; ++c)
      row[c] = (g.weights[c] > 0.0 ? std::log(g.weights[c]) : -std::numeric_limits<double>::infinity()) +
               log_normal_pdf(data[n], g.means[c], g.variances[c]);
    const double norm = log_sum_exp(row);
    ll += norm;
    for (std::size_t c = 0; c < C; ++c) log_resp[n * C + c] = row[c] - norm;
  }
  return ll;
}

void erase_component(Gmm& g, std::size_t c) {
  g.weights.erase(g.weights.begin() + static_cast<std::ptrdiff_t>(c));
  g.means.erase(g.means.begin() + static_cast<std::ptrdiff_t>(c));
  g.variances.erase(g.variances.begin() + static_cast<std::ptrdiff_t>(c));
}

void normalize_weights(Gmm& g) {
  const double total = std::accumulate(g.weights.begin(), g.weights.end(), 0.0);
  for (auto& w : g.weights) w /= total;
}

}  // namespace

double Gmm::mean() const {
  double m = 0.0;
  for (std::size_t c = 0; c < size(); ++c) m += weights[c] * means[c];
  return m;
}

void Gmm::validate(double variance_floor) const {
  if (weights.empty() || weights.size() != means.size() || weights.size() != variances.size())
    throw std::invalid_argument("Gmm: inconsistent component arrays");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("Gmm: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("Gmm: weights do not sum to one");
  for (double v : variances)
    if (!(v > 0.0) || v < variance_floor) throw std::invalid_argument("Gmm: variance below floor");
}

double default_variance_floor(const Band& band) { return 1e-6 * band.width() * band.width(); }

std::vector<double> sample_gmm(const Gmm& gmm, std::size_t n, const Band& band, Rng& rng) {
  gmm.validate();
  std::discrete_distribution<std::size_t> pick(gmm.weights.begin(), gmm.weights.end());
  std::normal_distribution<double> unit(0.0, 1.0);
  constexpr int kMaxAttempts = 10000;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
      const std::size_t c = pick(rng);
      f = gmm.means[c] + std::sqrt(gmm.variances[c]) * unit(rng);
      accepted = f > band.lower_hz && f <= band.upper_hz;
    }
    out.push_back(accepted ? f : clamp_to_band(f, band));
  }
  return out;
}

double log_likelihood(const Gmm& gmm, std::span<const double> data) {
  std::vector<double> scratch;
  return expectation(gmm, data, scratch);
}

double bic(const Gmm& gmm, std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("bic: empty data");
  return 3.0 * static_cast<double>(gmm.size()) * std::log(static_cast<double>(data.size())) -
         2.0 * log_likelihood(gmm, data);
}

EmResult em_fit(std::span<const double> data, const Gmm& init, const EmOptions& options) {
  if (data.empty()) throw std::invalid_argument("em_fit: empty data");
  if (init.size() == 0) throw std::invalid_argument("em_fit: need at least one component");

  EmResult result;
  Gmm g = init;
  for (auto& v : g.variances) v = std::max(v, options.variance_floor);
  normalize_weights(g);

  std::vector<double> log_resp;
  double ll = expectation(g, data, log_resp);
  result.log_likelihood.push_back(ll);
  const double N = static_cast<double>(data.size());

  for (int it = 0; it < options.max_iterations; ++it) {
    const std::size_t C = g.size();
    // M-step
    std::vector<double> mass(C, 0.0), sum(C, 0.0);
    for (std::size_t n = 0; n < data.size(); ++n)
      for (std::size_t c = 0; c < C; ++c) {
        const double r = std::exp(log_resp[n * C + c]);
        mass[c] += r;
        sum[c] += r * data[n];
      }
    Gmm next = g;
    for (std::size_t c = 0; c < C; ++c) {
      if (mass[c] < options.min_component_mass) continue;
      next.means[c] = sum[c] / mass[c];
      double sq = 0.0;
      for (std::size_t n = 0; n < data.size(); ++n) {
        const double d = data[n] - next.means[c];
        sq += std::exp(log_resp[n * C + c]) * d * d;
      }
      next.variances[c] = std::max(sq / mass[c], options.variance_floor);
      next.weights[c] = mass[c] / N;
    }
    for (std::size_t c = C; c-- > 0;) {
      if (mass[c] < options.min_component_mass && next.size() > 1) {
        erase_component(next, c);
        ++result.removed_components;
      }
    }
    normalize_weights(next);

    const double ll_next = expectation(next, data, log_resp);
    g = std::move(next);
    result.log_likelihood.push_back(ll_next);
    result.iterations = it + 1;
    const double gain = ll_next - ll;
    ll = ll_next;
    if (gain < options.relative_tolerance * std::abs(ll)) break;
  }
  result.model = std::move(g);
  return result;
}

Gmm quantile_init(std::span<const double> data, std::size_t components, double variance_floor) {
  if (data.empty()) throw std::invalid_argument("quantile_init: empty data");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t C = std::clamp<std::size_t>(components, 1, sorted.size());
  Gmm g;
  const std::size_t N = sorted.size();
  for (std::size_t c = 0; c < C; ++c) {
    const std::size_t lo = c * N / C;
    const std::size_t hi = (c + 1) * N / C;
    const double count = static_cast<double>(hi - lo);
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += sorted[i];
    mean /= count;
    double var = 0.0;
    for (std::size_t i = lo; i < hi; ++i) var += (sorted[i] - mean) * (sorted[i] - mean);
    var /= count;
    g.weights.push_back(count / static_cast<double>(N));
    g.means.push_back(mean);
    g.variances.push_back(std::max(var, variance_floor));
  }
  return g;
}

Gmm initial_proposal(const Band& band, std::size_t num_samples, std::size_t max_components) {
  if (num_samples == 0 || max_components == 0) throw std::invalid_argument("initial_proposal: zero size");
  const double W = band.width();
  const double n_c = static_cast<double>(num_samples);
  const double var = W * W / (4.0 * n_c * n_c);
  const std::size_t C = std::min(num_samples, max_components);
  Gmm g;
  for (std::size_t c = 0; c < C; ++c) {
    const std::size_t lo = c * num_samples / C;
    const std::size_t hi = (c + 1) * num_samples / C;
    const double count = static_cast<double>(hi - lo);
    double mean = 0.0;
    for (std::size_t n = lo; n < hi; ++n) mean += band.lower_hz + (static_cast<double>(n) + 0.5) * W / n_c;
    mean /= count;
    double spread = 0.0;
    for (std::size_t n = lo; n < hi; ++n) {
      const double d = band.lower_hz + (static_cast<double>(n) + 0.5) * W / n_c - mean;
      spread += d * d;
    }
    g.weights.push_back(count / n_c);
    g.means.push_back(mean);
    g.variances.push_back(var + spread / count);
  }
  return g;
}

ModelSelection select_by_bic(std::span<const double> data, std::size_t max_components, const EmOptions& options) {
  if (data.empty()) throw std::invalid_argument("select_by_bic: empty data");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  const std::size_t C = std::max<std::size_t>(1, std::min(max_components, distinct));

  ModelSelection sel;
  sel.bic_by_components.assign(max_components, std::numeric_limits<double>::quiet_NaN());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 1; c <= C; ++c) {
    auto fit = em_fit(data, quantile_init(data, c, options.variance_floor), options);
    const double score = bic(fit.model, data);
    sel.bic_by_components[c - 1] = score;
    if (score < best) {
      best = score;
      sel.model = std::move(fit.model);
      sel.selected = sel.model.size();
    }
  }
  return sel;
}

Gmm smooth(const Gmm& fitted, const Gmm& previous, double alpha, double variance_floor) {
  if (previous.size() == 0) return fitted;
  Gmm out = fitted;
  for (std::size_t c = 0; c < fitted.size(); ++c) {
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < previous.size(); ++p) {
      const double d = std::abs(previous.means[p] - fitted.means[c]);
      if (d < best) {
        best = d;
        nearest = p;
      }
    }
    out.weights[c] = alpha * fitted.weights[c] + (1.0 - alpha) * previous.weights[nearest];
    out.means[c] = alpha * fitted.means[c] + (1.0 - alpha) * previous.means[nearest];
    out.variances[c] =
        std::max(alpha * fitted.variances[c] + (1.0 - alpha) * previous.variances[nearest], variance_floor);
  }
  normalize_weights(out);
  return out;
}

}  // namespace sscf
