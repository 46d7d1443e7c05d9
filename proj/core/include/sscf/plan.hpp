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

#include <vector>

namespace sscf {

struct Subchannel {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
  double rate_bps = 0.0;

  double lower_edge() const { return center_hz - 0.5 * bandwidth_hz; }
  double upper_edge() const { return center_hz + 0.5 * bandwidth_hz; }
};

/// Ordered (by center frequency) set of disjoint subchannels.
struct SubchannelPlan {
  std::vector<Subchannel> subchannels;
  double achieved_rate_bps = 0.0;

  double total_bandwidth() const {
    double sum = 0.0;
    for (const auto& s : subchannels) sum += s.bandwidth_hz;
    return sum;
  }
  bool empty() const { return subchannels.empty(); }
};

}  // namespace sscf
