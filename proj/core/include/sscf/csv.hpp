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

#include <ostream>
#include <string>

#include "sscf/cluster_alloc.hpp"
#include "sscf/experiment.hpp"

namespace sscf {

/// Frequency in Hz as an integer.
std::string format_hz(double hz);
/// Rate in bit/s with 6 significant digits.
std::string format_rate(double bps);

void write_plan_csv(std::ostream& out, const SubchannelPlan& plan);
void write_clustering_csv(std::ostream& out, const Clustering& clustering);
void write_cluster_plan_csv(std::ostream& out, const ClusterPlan& plan);
void write_experiment_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace sscf
