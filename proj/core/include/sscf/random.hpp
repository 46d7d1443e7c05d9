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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sscf {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a sub-stream key from a master seed and a path of indices.
/// Keys for distinct paths are independent, so adding entities never
/// perturbs the draws of existing ones.
inline std::uint64_t derive_key(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t key = mix64(master);
  for (auto p : path) key = mix64(key ^ mix64(p + 0x632be59bd9b4e019ULL));
  return key;
}

/// Counter-based uniform stream: draw j of a keyed entity.
class KeyedStream {
 public:
  explicit KeyedStream(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t bits(std::uint64_t j) const noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * (j + 1)); }

  /// Uniform on the open interval (0, 1).
  double open01(std::uint64_t j) const noexcept {
    return (static_cast<double>(bits(j) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on (lo, hi).
  double uniform(std::uint64_t j, double lo, double hi) const noexcept { return lo + (hi - lo) * open01(j); }

 private:
  std::uint64_t key_;
};

// stream tags
enum class Stream : std::uint64_t {
  kApPosition = 1,
  kUePosition = 2,
  kApHeight = 3,
  kLinkAngle = 4,
  kOptimizer = 5,
  kClustering = 6,
};

inline Rng make_rng(std::uint64_t master, Stream s, std::uint64_t index = 0) {
  return Rng(derive_key(master, {static_cast<std::uint64_t>(s), index}));
}

}  // namespace sscf
