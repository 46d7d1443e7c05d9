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

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "sscf/experiment.hpp"

namespace sscf {

/// Sets one key of an INI-style configuration. Throws ConfigError on an
/// unknown section or key or a malformed value.
void apply_setting(ExperimentConfig& config, std::string_view section, std::string_view key, std::string_view value);

/// Applies "section.key=value".
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Reads [section] key = value pairs on top of the defaults.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every recognized "section.key".
std::vector<std::string> config_keys();

}  // namespace sscf
