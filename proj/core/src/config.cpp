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

#include "sscf/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <type_traits>

#include <boost/algorithm/string/split.hpp>
#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sscf/errors.hpp"

namespace sscf {

namespace {

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

template <class T>
T parse_number(const std::string& raw, const std::string& key) {
  const auto s = boost::algorithm::trim_copy(raw);
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) throw ConfigError("bad value '" + raw + "' for " + key);
  return value;
}

bool parse_bool(const std::string& raw, const std::string& key) {
  const auto s = boost::algorithm::trim_copy(raw);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("bad boolean '" + raw + "' for " + key);
}

std::vector<double> parse_list(const std::string& raw, const std::string& key) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, raw, [](char c) { return c == ','; });
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_number<double>(p, key));
  return out;
}

template <class T, class Field>
Setter number(Field field, const std::string& key) {
  return [field, key](ExperimentConfig& c, const std::string& v) { std::invoke(field, c) = parse_number<T>(v, key); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto add = [&](const std::string& key, auto make) { t.emplace(key, make(key)); };
    auto num = [&](const std::string& key, auto field) {
      using T = std::remove_reference_t<std::invoke_result_t<decltype(field), ExperimentConfig&>>;
      t.emplace(key, number<T>(field, key));
    };

    num("scenario.area_side_m", [](ExperimentConfig& c) -> double& { return c.scenario.area_side_m; });
    num("scenario.num_aps", [](ExperimentConfig& c) -> int& { return c.scenario.num_aps; });
    num("scenario.num_ues", [](ExperimentConfig& c) -> int& { return c.scenario.num_ues; });
    num("scenario.elev_diff_min_m", [](ExperimentConfig& c) -> double& { return c.scenario.elev_diff_min_m; });
    num("scenario.elev_diff_max_m", [](ExperimentConfig& c) -> double& { return c.scenario.elev_diff_max_m; });
    num("scenario.total_power_w", [](ExperimentConfig& c) -> double& { return c.scenario.total_power_w; });
    num("scenario.total_bandwidth_hz", [](ExperimentConfig& c) -> double& { return c.scenario.total_bandwidth_hz; });
    add("scenario.noise_psd_dbm_per_hz", [](const std::string& key) -> Setter {
      return [key](ExperimentConfig& c, const std::string& v) {
        c.scenario.noise_psd_w_per_hz = dbm_per_hz_to_watt(parse_number<double>(v, key));
      };
    });

    num("antenna.radiation_efficiency", [](ExperimentConfig& c) -> double& { return c.antenna.radiation_efficiency; });
    num("antenna.aperture_length_m", [](ExperimentConfig& c) -> double& { return c.antenna.aperture_length_m; });
    num("antenna.attenuation_rad_per_m",
        [](ExperimentConfig& c) -> double& { return c.antenna.attenuation_rad_per_m; });
    num("antenna.cutoff_hz", [](ExperimentConfig& c) -> double& { return c.antenna.cutoff_hz; });
    num("antenna.band_upper_hz", [](ExperimentConfig& c) -> double& { return c.band_upper_hz; });

    num("ce.samples", [](ExperimentConfig& c) -> int& { return c.ce.num_samples; });
    num("ce.elites", [](ExperimentConfig& c) -> int& { return c.ce.num_elites; });
    num("ce.iterations", [](ExperimentConfig& c) -> int& { return c.ce.max_iterations; });
    num("ce.max_components", [](ExperimentConfig& c) -> int& { return c.ce.max_components; });
    num("ce.smoothing", [](ExperimentConfig& c) -> double& { return c.ce.smoothing; });
    num("ce.grid_step_hz", [](ExperimentConfig& c) -> double& { return c.ce.grid_step_hz; });
    num("ce.subchannels", [](ExperimentConfig& c) -> int& { return c.ce.num_subchannels; });

    add("qos.min_rx_psd_dbm_per_hz", [](const std::string& key) -> Setter {
      return [key](ExperimentConfig& c, const std::string& v) {
        c.qos.min_rx_psd_w_per_hz = dbm_per_hz_to_watt(parse_number<double>(v, key));
      };
    });
    num("qos.coherence_gap_db", [](ExperimentConfig& c) -> double& { return c.qos.coherence_gap_db; });
    num("qos.min_cluster_avg_rate_bps", [](ExperimentConfig& c) -> double& { return c.qos.min_cluster_avg_rate_bps; });

    add("clustering.method", [](const std::string&) -> Setter {
      return [](ExperimentConfig& c, const std::string& v) {
        parse_clustering_method(boost::algorithm::trim_copy(v), c.clustering);
      };
    });
    num("clustering.num_clusters", [](ExperimentConfig& c) -> int& { return c.clustering.num_clusters; });
    num("clustering.damping", [](ExperimentConfig& c) -> double& { return c.clustering.affinity.damping; });
    num("clustering.max_iterations", [](ExperimentConfig& c) -> int& { return c.clustering.affinity.max_iterations; });
    num("clustering.convergence_iterations",
        [](ExperimentConfig& c) -> int& { return c.clustering.affinity.convergence_iterations; });
    num("clustering.colocation_tolerance_m",
        [](ExperimentConfig& c) -> double& { return c.clustering.affinity.colocation_tolerance_m; });

    add("experiment.sweep", [](const std::string&) -> Setter {
      return [](ExperimentConfig& c, const std::string& v) {
        c.sweep = sweep_variable_from_string(boost::algorithm::trim_copy(v));
      };
    });
    add("experiment.values", [](const std::string& key) -> Setter {
      return [key](ExperimentConfig& c, const std::string& v) { c.sweep_values = parse_list(v, key); };
    });
    add("experiment.precoder", [](const std::string&) -> Setter {
      return [](ExperimentConfig& c, const std::string& v) {
        try {
          c.precoder = precoder_from_string(boost::algorithm::trim_copy(v));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
      };
    });
    add("experiment.allocator", [](const std::string&) -> Setter {
      return [](ExperimentConfig& c, const std::string& v) {
        c.allocator = allocator_from_string(boost::algorithm::trim_copy(v));
      };
    });
    num("experiment.trials", [](ExperimentConfig& c) -> int& { return c.trials; });
    num("experiment.base_seed", [](ExperimentConfig& c) -> std::uint64_t& { return c.base_seed; });
    add("experiment.output", [](const std::string&) -> Setter {
      return [](ExperimentConfig& c, const std::string& v) { c.output = boost::algorithm::trim_copy(v); };
    });
    num("experiment.workers", [](ExperimentConfig& c) -> int& { return c.workers; });
    add("experiment.record_wall_time", [](const std::string& key) -> Setter {
      return [key](ExperimentConfig& c, const std::string& v) { c.record_wall_time = parse_bool(v, key); };
    });
    return t;
  }();
  return table;
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view section, std::string_view key, std::string_view value) {
  const std::string full = std::string(section) + "." + std::string(key);
  const auto& table = setters();
  const auto it = table.find(full);
  if (it == table.end()) throw ConfigError("unknown configuration key '" + full + "'");
  it->second(config, std::string(value));
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
    throw ConfigError("override must look like section.key=value, got '" + std::string(assignment) + "'");
  const auto section = boost::algorithm::trim_copy(std::string(assignment.substr(0, dot)));
  const auto key = boost::algorithm::trim_copy(std::string(assignment.substr(dot + 1, eq - dot - 1)));
  apply_setting(config, section, key, assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  ExperimentConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("entry '" + section + "' outside any section");
    for (const auto& [key, value] : body) apply_setting(config, section, key, value.data());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, v] : setters()) out.push_back(k);
  return out;
}

}  // namespace sscf
