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

#include "sscf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sscf/errors.hpp"

namespace sscf {

const char* to_string(AllocatorKind a) {
  switch (a) {
    case AllocatorKind::AdaptiveGmm: return "adaptive_gmm";
    case AllocatorKind::FixedGmm: return "fixed_gmm";
    case AllocatorKind::EqualBandwidth: return "equal_bandwidth";
  }
  return "?";
}

const char* to_string(SweepVariable s) {
  switch (s) {
    case SweepVariable::NumAps: return "num_aps";
    case SweepVariable::NumUes: return "num_ues";
    case SweepVariable::TotalBandwidth: return "total_bandwidth";
  }
  return "?";
}

AllocatorKind allocator_from_string(const std::string& s) {
  if (s == "adaptive_gmm") return AllocatorKind::AdaptiveGmm;
  if (s == "fixed_gmm") return AllocatorKind::FixedGmm;
  if (s == "equal_bandwidth") return AllocatorKind::EqualBandwidth;
  throw ConfigError("unknown allocator '" + s + "'");
}

SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "num_aps") return SweepVariable::NumAps;
  if (s == "num_ues") return SweepVariable::NumUes;
  if (s == "total_bandwidth") return SweepVariable::TotalBandwidth;
  throw ConfigError("unknown sweep variable '" + s + "'");
}

std::string ClusteringConfig::label() const {
  switch (method) {
    case ClusteringMethod::None: return "none";
    case ClusteringMethod::KMeans: return "kmeans(" + std::to_string(num_clusters) + ")";
    case ClusteringMethod::Hierarchical: return "hierarchical";
  }
  return "?";
}

void parse_clustering_method(const std::string& s, ClusteringConfig& out) {
  if (s == "none") {
    out.method = ClusteringMethod::None;
  } else if (s == "hierarchical") {
    out.method = ClusteringMethod::Hierarchical;
  } else if (s == "kmeans") {
    out.method = ClusteringMethod::KMeans;
  } else if (s.starts_with("kmeans(") && s.ends_with(")")) {
    const auto inner = s.substr(7, s.size() - 8);
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(inner, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != inner.size()) throw ConfigError("bad cluster count in '" + s + "'");
    out.method = ClusteringMethod::KMeans;
    out.num_clusters = k;
  } else {
    throw ConfigError("unknown clustering method '" + s + "'");
  }
}

void ExperimentConfig::validate() const {
  antenna.validate();
  band().validate();
  ce.validate();
  qos.validate();
  if (sweep_values.empty()) throw ConfigError("sweep needs at least one value");
  for (std::size_t i = 0; i < sweep_values.size(); ++i) {
    if (!(sweep_values[i] > 0.0)) throw ConfigError("sweep values must be positive");
    if (i > 0 && !(sweep_values[i] > sweep_values[i - 1])) throw ConfigError("sweep values must be sorted");
    if (sweep != SweepVariable::TotalBandwidth && sweep_values[i] != std::floor(sweep_values[i]))
      throw ConfigError("AP and UE counts must be integers");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (workers < 0) throw ConfigError("workers must be non-negative");
  if (clustering.method == ClusteringMethod::KMeans && clustering.num_clusters < 1)
    throw ConfigError("K-means needs at least one cluster");
  trial_scenario(*this, sweep_values.front(), 0).validate();
}

SubchannelPlan equal_bandwidth_baseline(const Scenario& scenario, const AntennaParams& params, const Band& band,
                                        int num_subchannels, Precoder method, double grid_step_hz) {
  if (num_subchannels < 1) throw std::invalid_argument("equal_bandwidth_baseline: need at least one subchannel");
  const double lo = band.lower_hz + 0.5 * grid_step_hz;
  const double hi = band.upper_hz;
  if (!(hi > lo)) throw std::invalid_argument("equal_bandwidth_baseline: guard leaves no usable band");
  const double width = std::min(scenario.total_bandwidth_hz, hi - lo);
  const double start = 0.5 * (lo + hi) - 0.5 * width;
  const double tile = width / num_subchannels;

  SubchannelPlan plan;
  for (int i = 0; i < num_subchannels; ++i)
    plan.subchannels.push_back({start + (i + 0.5) * tile, tile, 0.0});
  score_plan(plan, scenario, params, method);
  return plan;
}

ScenarioConfig trial_scenario(const ExperimentConfig& config, double sweep_value, int trial) {
  ScenarioConfig s = config.scenario;
  switch (config.sweep) {
    case SweepVariable::NumAps: s.num_aps = static_cast<int>(sweep_value); break;
    case SweepVariable::NumUes: s.num_ues = static_cast<int>(sweep_value); break;
    case SweepVariable::TotalBandwidth: s.total_bandwidth_hz = sweep_value; break;
  }
  s.seed = config.base_seed + static_cast<std::uint64_t>(trial);
  return s;
}

Clustering cluster_aps(const ExperimentConfig& config, const Scenario& scenario, std::uint64_t seed) {
  const Band band = config.band();
  switch (config.clustering.method) {
    case ClusteringMethod::Hierarchical:
      return hierarchical_clustering(scenario, config.antenna, band, config.precoder, config.clustering.affinity);
    case ClusteringMethod::KMeans: {
      auto rng = make_rng(seed, Stream::kClustering);
      auto sets = kmeans_clusters(scenario.ap_positions, config.clustering.num_clusters, rng);
      return make_clustering(std::move(sets), scenario, config.antenna, band);
    }
    case ClusteringMethod::None: break;
  }
  std::vector<int> all(static_cast<std::size_t>(scenario.num_aps()));
  for (std::size_t m = 0; m < all.size(); ++m) all[m] = static_cast<int>(m);
  return make_clustering({all}, scenario, config.antenna, band);
}

TrialOutcome run_trial(const ExperimentConfig& config, const ScenarioConfig& scenario_config) {
  ExperimentConfig cfg = config;
  cfg.scenario = scenario_config;
  const Band band = cfg.band();

  TrialOutcome out;
  out.scenario = generate_scenario(scenario_config);
  const auto& scenario = out.scenario;

  CeHyperparams hyper = cfg.ce;
  if (cfg.allocator == AllocatorKind::FixedGmm) hyper.max_components = 1;
  auto rng = make_rng(scenario_config.seed, Stream::kOptimizer);

  if (cfg.clustering.method == ClusteringMethod::None) {
    if (cfg.allocator == AllocatorKind::EqualBandwidth) {
      out.plan = equal_bandwidth_baseline(scenario, cfg.antenna, band, cfg.ce.num_subchannels, cfg.precoder,
                                          cfg.ce.grid_step_hz);
    } else {
      out.plan = allocate(scenario, cfg.antenna, band, cfg.precoder, hyper, cfg.qos, rng).plan;
    }
    out.total_rate_bps = out.plan.achieved_rate_bps;
    return out;
  }

  out.clustering = cluster_aps(cfg, scenario, scenario_config.seed);
  if (cfg.allocator == AllocatorKind::EqualBandwidth) {
    const auto tiles = equal_bandwidth_baseline(scenario, cfg.antenna, band, cfg.ce.num_subchannels,
                                                Precoder::MRT, cfg.ce.grid_step_hz);
    out.cluster_plan = greedy_assign(tiles.subchannels, *out.clustering, cfg.qos.min_cluster_avg_rate_bps, scenario,
                                     cfg.antenna, cfg.precoder);
  } else {
    out.cluster_plan =
        allocate_clustered(scenario, cfg.antenna, band, *out.clustering, cfg.precoder, hyper, cfg.qos, rng).plan;
  }
  out.total_rate_bps = out.cluster_plan->total_rate_bps;
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t n_values = config.sweep_values.size();
  const auto n_trials = static_cast<std::size_t>(config.trials);
  const std::size_t n_jobs = n_values * n_trials;

  ExperimentResult result;
  result.trials.resize(n_jobs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < n_jobs; j = next++) {
      auto& rec = result.trials[j];
      rec.sweep_value = config.sweep_values[j / n_trials];
      rec.trial = static_cast<int>(j % n_trials);
      const auto sc = trial_scenario(config, rec.sweep_value, rec.trial);
      rec.seed = sc.seed;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        rec.total_rate_bps = run_trial(config, sc).total_rate_bps;
      } catch (const SingularChannel& e) {
        rec.status = std::string("singular_channel: ") + e.what();
      } catch (const InfeasibleBand& e) {
        rec.status = std::string("infeasible_band: ") + e.what();
      }
      rec.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };

  unsigned n_workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, n_jobs));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < n_workers; ++w)
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n_jobs;
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t v = 0; v < n_values; ++v) {
    SweepSummary s;
    s.sweep_value = config.sweep_values[v];
    double sum = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) {
      const auto& rec = result.trials[v * n_trials + t];
      if (rec.status != "ok") continue;
      sum += rec.total_rate_bps;
      ++s.successful_trials;
    }
    if (s.successful_trials > 0) {
      s.mean_rate_bps = sum / s.successful_trials;
      double ss = 0.0;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const auto& rec = result.trials[v * n_trials + t];
        if (rec.status == "ok") ss += (rec.total_rate_bps - s.mean_rate_bps) * (rec.total_rate_bps - s.mean_rate_bps);
      }
      if (s.successful_trials > 1)
        s.stderr_rate_bps = std::sqrt(ss / (s.successful_trials - 1)) / std::sqrt(double(s.successful_trials));
    }
    result.summaries.push_back(s);
  }
  return result;
}

}  // namespace sscf
