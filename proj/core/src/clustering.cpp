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

#include "sscf/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sscf/errors.hpp"

namespace sscf {
namespace {

double planar_distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<int> merged(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

void normalize(ClusterSets& clusters) {
  std::erase_if(clusters, [](const auto& c) { return c.empty(); });
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

ClusterSets kmeans_clusters(std::span<const Point2> aps, int num_clusters, Rng& rng) {
  const int M = static_cast<int>(aps.size());
  if (num_clusters < 1 || num_clusters > M) throw std::invalid_argument("kmeans: need 1 <= clusters <= APs");
  const auto K = static_cast<std::size_t>(num_clusters);

  // farthest-point seeding
  std::vector<Point2> centroids;
  std::vector<double> nearest(M, std::numeric_limits<double>::infinity());
  std::uniform_int_distribution<int> first(0, M - 1);
  int pick = first(rng);
  while (centroids.size() < K) {
    centroids.push_back(aps[pick]);
    for (int m = 0; m < M; ++m) nearest[m] = std::min(nearest[m], planar_distance(aps[m], aps[pick]));
    pick = static_cast<int>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
  }

  std::vector<int> label(M, 0);
  for (int it = 0; it < 100; ++it) {
    for (int m = 0; m < M; ++m) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < K; ++c) {
        const double d = planar_distance(aps[m], centroids[c]);
        if (d < best) {
          best = d;
          label[m] = static_cast<int>(c);
        }
      }
    }
    std::vector<Point2> next(K);
    std::vector<int> count(K, 0);
    for (int m = 0; m < M; ++m) {
      next[label[m]].x += aps[m].x;
      next[label[m]].y += aps[m].y;
      ++count[label[m]];
    }
    for (std::size_t c = 0; c < K; ++c) {
      if (count[c] > 0) {
        next[c].x /= count[c];
        next[c].y /= count[c];
        continue;
      }
      // re-seed from the AP farthest from its own centroid, taken from a
      // cluster that can spare it
      int far = -1;
      double far_d = -1.0;
      for (int m = 0; m < M; ++m) {
        if (count[label[m]] < 2) continue;
        const double d = planar_distance(aps[m], centroids[label[m]]);
        if (d > far_d) {
          far_d = d;
          far = m;
        }
      }
      if (far >= 0) {
        --count[label[far]];
        label[far] = static_cast<int>(c);
        count[c] = 1;
        next[c] = aps[far];
      }
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < K; ++c) moved = std::max(moved, planar_distance(next[c], centroids[c]));
    centroids = std::move(next);
    if (moved < 1e-6) break;
  }

  ClusterSets out(K);
  for (int m = 0; m < M; ++m) out[label[m]].push_back(m);
  normalize(out);
  return out;
}

std::vector<int> serving_aps(const Scenario& scenario, const AntennaParams& params, const Band& band) {
  const int K = scenario.num_ues();
  const int M = scenario.num_aps();
  std::vector<int> out(K, 0);
  for (int k = 0; k < K; ++k) {
    double best = -1.0;
    for (int m = 0; m < M; ++m) {
      const double rss =
          link_rss(scenario.tx_psd(k), params, band, scenario.angles(k, m), scenario.distances(k, m));
      if (rss > best) {
        best = rss;
        out[k] = m;
      }
    }
  }
  return out;
}

Association associate_ues(const Scenario& scenario, const AntennaParams& params, const Band& band,
                          const ClusterSets& clusters) {
  Association a;
  a.ue_to_ap = serving_aps(scenario, params, band);
  std::vector<int> owner(scenario.num_aps(), -1);
  for (std::size_t z = 0; z < clusters.size(); ++z)
    for (int m : clusters[z]) owner.at(m) = static_cast<int>(z);
  a.ue_to_cluster.reserve(a.ue_to_ap.size());
  for (int m : a.ue_to_ap) {
    if (owner[m] < 0) throw std::invalid_argument("associate_ues: clusters do not cover every AP");
    a.ue_to_cluster.push_back(owner[m]);
  }
  return a;
}

AffinityResult affinity_propagation(std::span<const Point2> pts, const AffinityOptions& opt) {
  const int n = static_cast<int>(pts.size());
  if (n < 1) throw std::invalid_argument("affinity_propagation: no points");
  AffinityResult res;

  Eigen::MatrixXd S(n, n);
  double spread = 0.0;
  std::vector<double> off;
  off.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      S(i, k) = -planar_distance(pts[i], pts[k]);
      if (i != k) {
        off.push_back(S(i, k));
        spread = std::max(spread, -S(i, k));
      }
    }
  if (n == 1 || spread <= opt.colocation_tolerance_m) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    res.clusters = {all};
    res.exemplars = {0};
    res.converged = true;
    return res;
  }
  const auto mid = off.begin() + static_cast<std::ptrdiff_t>(off.size() / 2);
  std::nth_element(off.begin(), mid, off.end());
  double preference = *mid;
  if (off.size() % 2 == 0) preference = 0.5 * (preference + *std::max_element(off.begin(), mid));
  for (int i = 0; i < n; ++i) S(i, i) = preference;

  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const double lambda = opt.damping;
  std::vector<int> exemplars, last_stable;
  int stable = 0;

  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it + 1;
    // responsibilities
    for (int i = 0; i < n; ++i) {
      double first = -std::numeric_limits<double>::infinity();
      double second = first;
      int arg = -1;
      for (int k = 0; k < n; ++k) {
        const double v = A(i, k) + S(i, k);
        if (v > first) {
          second = first;
          first = v;
          arg = k;
        } else if (v > second) {
          second = v;
        }
      }
      for (int k = 0; k < n; ++k) {
        const double fresh = S(i, k) - (k == arg ? second : first);
        R(i, k) = lambda * R(i, k) + (1.0 - lambda) * fresh;
      }
    }
    // availabilities
    for (int k = 0; k < n; ++k) {
      double col = R(k, k);
      for (int i = 0; i < n; ++i)
        if (i != k) col += std::max(0.0, R(i, k));
      for (int i = 0; i < n; ++i) {
        const double fresh = i == k ? col - R(k, k) : std::min(0.0, col - std::max(0.0, R(i, k)));
        A(i, k) = lambda * A(i, k) + (1.0 - lambda) * fresh;
      }
    }

    std::vector<int> now;
    for (int k = 0; k < n; ++k)
      if (A(k, k) + R(k, k) > 0.0) now.push_back(k);
    if (now == exemplars && !now.empty()) {
      ++stable;
    } else {
      stable = 0;
    }
    exemplars = std::move(now);
    if (!exemplars.empty() && stable > 0) last_stable = exemplars;
    if (stable >= opt.convergence_iterations) {
      res.converged = true;
      break;
    }
  }

  if (!res.converged) exemplars = last_stable;
  if (exemplars.empty()) {
    // no stable exemplar set: keep the strongest self-evidence
    int best = 0;
    for (int k = 1; k < n; ++k)
      if (A(k, k) + R(k, k) > A(best, best) + R(best, best)) best = k;
    exemplars = {best};
  }

  res.exemplars = exemplars;
  res.clusters.assign(exemplars.size(), {});
  for (int i = 0; i < n; ++i) {
    std::size_t owner = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < exemplars.size(); ++e) {
      if (exemplars[e] == i) {
        owner = e;
        break;
      }
      if (S(i, exemplars[e]) > best) {
        best = S(i, exemplars[e]);
        owner = e;
      }
    }
    res.clusters[owner].push_back(i);
  }
  normalize(res.clusters);
  return res;
}

std::vector<int> served_ues(std::span<const int> cluster, std::span<const int> ue_to_ap) {
  std::vector<int> out;
  for (std::size_t k = 0; k < ue_to_ap.size(); ++k)
    if (std::find(cluster.begin(), cluster.end(), ue_to_ap[k]) != cluster.end()) out.push_back(static_cast<int>(k));
  return out;
}

double per_ap_spectral_efficiency(std::span<const int> cluster, const ClusterScoring& ctx) {
  if (cluster.empty()) throw std::invalid_argument("per_ap_spectral_efficiency: empty cluster");
  const auto ues = served_ues(cluster, ctx.ue_to_ap);
  if (ues.empty()) return 0.0;
  const auto sub = ctx.scenario.restrict_to(cluster, ues);
  double total = 0.0;
  for (std::size_t i = 0; i < ues.size(); ++i) {
    const int k = ues[i];
    const double theta = ctx.scenario.angles(k, ctx.ue_to_ap[k]);
    const double f = clamp_to_band(peak_frequency(ctx.params.cutoff_hz, theta), ctx.band);
    const auto h = build_channel(sub, ctx.params, f);
    PrecodingMatrix w;
    try {
      w = precode(h, ctx.method);
    } catch (const SingularChannel&) {
      w = precode(h, Precoder::MRT);
    }
    const auto g = sinr(h, w, sub.tx_psd, sub.noise_psd);
    total += std::log2(1.0 + g(static_cast<Eigen::Index>(i)));
  }
  return total / static_cast<double>(cluster.size());
}

ClusterSets merge_void_clusters(ClusterSets clusters, const ClusterScoring& ctx) {
  std::vector<std::size_t> serving, voids;
  for (std::size_t z = 0; z < clusters.size(); ++z)
    (served_ues(clusters[z], ctx.ue_to_ap).empty() ? voids : serving).push_back(z);
  if (serving.empty()) return clusters;

  for (std::size_t v : voids) {
    std::size_t target = serving.front();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t z : serving) {
      const double se = per_ap_spectral_efficiency(merged(clusters[z], clusters[v]), ctx);
      if (se > best) {
        best = se;
        target = z;
      }
    }
    clusters[target] = merged(clusters[target], clusters[v]);
    clusters[v].clear();
  }
  normalize(clusters);
  return clusters;
}

ClusterSets hierarchical_merge(ClusterSets clusters, const ClusterScoring& ctx) {
  normalize(clusters);
  std::vector<double> se;
  for (const auto& c : clusters) se.push_back(per_ap_spectral_efficiency(c, ctx));
  while (clusters.size() > 1) {
    double best_margin = 0.0;
    std::size_t bi = 0, bj = 0;
    double best_se = 0.0;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double joint = per_ap_spectral_efficiency(merged(clusters[i], clusters[j]), ctx);
        const double margin = joint - std::max(se[i], se[j]);
        if (margin > best_margin) {
          best_margin = margin;
          bi = i;
          bj = j;
          best_se = joint;
        }
      }
    if (!(best_margin > 0.0)) break;
    clusters[bi] = merged(clusters[bi], clusters[bj]);
    se[bi] = best_se;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    se.erase(se.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  normalize(clusters);
  return clusters;
}

Clustering make_clustering(ClusterSets clusters, const Scenario& scenario, const AntennaParams& params,
                           const Band& band) {
  normalize(clusters);
  Clustering out;
  auto assoc = associate_ues(scenario, params, band, clusters);
  out.ue_to_ap = std::move(assoc.ue_to_ap);
  out.ue_to_cluster = std::move(assoc.ue_to_cluster);
  out.ues_per_cluster.assign(clusters.size(), 0);
  for (int z : out.ue_to_cluster) ++out.ues_per_cluster[z];
  out.initial_cluster_count = clusters.size();
  out.clusters = std::move(clusters);
  return out;
}

Clustering hierarchical_clustering(const Scenario& scenario, const AntennaParams& params, const Band& band,
                                   Precoder method, const AffinityOptions& options) {
  auto step1 = affinity_propagation(scenario.ap_positions, options);
  const std::size_t initial = step1.clusters.size();
  ClusterSets clusters = std::move(step1.clusters);
  if (scenario.num_ues() > 0) {
    ClusterScoring ctx{scenario, params, band, method, serving_aps(scenario, params, band)};
    clusters = merge_void_clusters(std::move(clusters), ctx);
    clusters = hierarchical_merge(std::move(clusters), ctx);
  }
  Clustering out;
  if (scenario.num_ues() > 0) {
    out = make_clustering(std::move(clusters), scenario, params, band);
  } else {
    out.clusters = std::move(clusters);
    out.ues_per_cluster.assign(out.clusters.size(), 0);
  }
  out.converged = step1.converged;
  out.initial_cluster_count = initial;
  return out;
}

}  // namespace sscf
