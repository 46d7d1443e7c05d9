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

#include <stdexcept>
#include <string>

namespace sscf {

/// ZF precoding requested on a channel whose Gram matrix is (numerically) singular, or K > M.
class SingularChannel : public std::runtime_error {
 public:
  explicit SingularChannel(const std::string& what) : std::runtime_error(what) {}
};

/// No candidate plan ever produced a usable subchannel.
class InfeasibleBand : public std::runtime_error {
 public:
  explicit InfeasibleBand(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unknown configuration entry.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sscf
