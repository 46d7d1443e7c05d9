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

#include "sscf/csv.hpp"

#include <cmath>
#include <cstdio>

namespace sscf {

std::string format_hz(double hz) { return std::to_string(std::llround(hz)); }

std::string format_rate(double bps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", bps);
  return buf;
}

namespace {

std::string format_sweep_value(double v) {
  if (v == std::floor(v) && std::fabs(v) < 9e15) return std::to_string(std::llround(v));
  return format_rate(v);
}

// Quotes a field when it contains a separator, quote or line break.
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_plan_csv(std::ostream& out, const SubchannelPlan& plan) {
  out << "index,center_hz,bandwidth_hz,rate_bps\n";
  for (std::size_t i = 0; i < plan.subchannels.size(); ++i) {
    const auto& s = plan.subchannels[i];
    out << i << ',' << format_hz(s.center_hz) << ',' << format_hz(s.bandwidth_hz) << ',' << format_rate(s.rate_bps)
        << '\n';
  }
}

void write_clustering_csv(std::ostream& out, const Clustering& clustering) {
  out << "kind,index,serving_ap,cluster_index\n";
  std::vector<int> ap_cluster;
  for (std::size_t z = 0; z < clustering.clusters.size(); ++z)
    for (int m : clustering.clusters[z]) {
      if (static_cast<std::size_t>(m) >= ap_cluster.size()) ap_cluster.resize(static_cast<std::size_t>(m) + 1, -1);
      ap_cluster[static_cast<std::size_t>(m)] = static_cast<int>(z);
    }
  for (std::size_t m = 0; m < ap_cluster.size(); ++m) out << "ap," << m << ",," << ap_cluster[m] << '\n';
  for (std::size_t k = 0; k < clustering.ue_to_ap.size(); ++k)
    out << "ue," << k << ',' << clustering.ue_to_ap[k] << ',' << clustering.ue_to_cluster[k] << '\n';
}

void write_cluster_plan_csv(std::ostream& out, const ClusterPlan& plan) {
  out << "cluster_index,subchannel_index,center_hz,bandwidth_hz,rate_bps,cluster_avg_rate_bps,feasible\n";
  for (std::size_t z = 0; z < plan.subchannels.size(); ++z)
    for (std::size_t i = 0; i < plan.subchannels[z].size(); ++i) {
      const auto& s = plan.subchannels[z][i];
      out << z << ',' << i << ',' << format_hz(s.center_hz) << ',' << format_hz(s.bandwidth_hz) << ','
          << format_rate(s.rate_bps) << ',' << format_rate(plan.cluster_avg_rate_bps[z]) << ','
          << (plan.feasible ? "true" : "false") << '\n';
    }
}

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result) {
  const std::string fixed = std::string(",") + to_string(config.allocator) + ',' + quote(config.clustering.label()) +
                            ',' + to_string(config.precoder) + ',';
  out << "row,sweep_variable,sweep_value,trial,seed,allocator,clustering,precoder,total_rate_bps,stderr_bps,"
         "wall_time_ms,status\n";
  std::size_t next_summary = 0;
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const auto& r = result.trials[i];
    const bool ok = r.status == "ok";
    out << "trial," << to_string(config.sweep) << ',' << format_sweep_value(r.sweep_value) << ',' << r.trial << ','
        << r.seed << fixed << (ok ? format_rate(r.total_rate_bps) : "") << ",,";
    if (config.record_wall_time) out << format_rate(r.wall_time_ms);
    out << ',' << quote(r.status) << '\n';

    const bool last_of_value = i + 1 == result.trials.size() || result.trials[i + 1].sweep_value != r.sweep_value;
    if (last_of_value && next_summary < result.summaries.size()) {
      const auto& s = result.summaries[next_summary++];
      out << "summary," << to_string(config.sweep) << ',' << format_sweep_value(s.sweep_value) << ','
          << s.successful_trials << ',' << fixed;
      if (s.successful_trials > 0) out << format_rate(s.mean_rate_bps) << ',' << format_rate(s.stderr_rate_bps);
      else out << ',';
      out << ",," << (s.successful_trials > 0 ? "ok" : "no_successful_trials") << '\n';
    }
  }
}

}  // namespace sscf
