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


#include <benchmark/benchmark.h>

#include "sscf/allocator.hpp"
#include "sscf/antenna.hpp"
#include "sscf/clustering.hpp"
#include "sscf/mimo.hpp"
#include "sscf/scenario.hpp"
#include "sscf/subchannel.hpp"

namespace {

const sscf::Band kBand{100e9, 200e9};

sscf::Scenario make(int M, int K) {
  sscf::ScenarioConfig c;
  c.num_aps = M;
  c.num_ues = K;
  c.seed = 7;
  return sscf::generate_scenario(c);
}

void BM_Gain(benchmark::State& state) {
  const sscf::AntennaParams p;
  double f = 120e9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sscf::gain(p, f, 0.8));
    f = f < 199e9 ? f + 1e6 : 120e9;
  }
}
BENCHMARK(BM_Gain);

void BM_ChannelAndZf(benchmark::State& state) {
  const auto s = make(static_cast<int>(state.range(0)), 10);
  const sscf::AntennaParams p;
  for (auto _ : state) {
    const auto h = sscf::build_channel(s, p, 150e9);
    benchmark::DoNotOptimize(sscf::precode(h, sscf::Precoder::ZF));
  }
}
BENCHMARK(BM_ChannelAndZf)->Arg(16)->Arg(32)->Arg(64);

void BM_SpectralEfficiency(benchmark::State& state) {
  const auto s = make(64, static_cast<int>(state.range(0)));
  const sscf::AntennaParams p;
  for (auto _ : state) benchmark::DoNotOptimize(sscf::spectral_efficiency(s, p, 150e9, sscf::Precoder::ZF));
}
BENCHMARK(BM_SpectralEfficiency)->Arg(4)->Arg(10);

void BM_BandwidthSearch(benchmark::State& state) {
  const auto s = make(32, 8);
  const sscf::AntennaParams p;
  const sscf::QosConfig qos;
  for (auto _ : state) benchmark::DoNotOptimize(sscf::bandwidth_search(150e9, s, p, kBand, qos, 10e6));
}
BENCHMARK(BM_BandwidthSearch);

void BM_Allocate(benchmark::State& state) {
  const auto s = make(static_cast<int>(state.range(0)), 8);
  const sscf::AntennaParams p;
  sscf::CeHyperparams h;
  h.max_iterations = 10;
  for (auto _ : state) {
    auto rng = sscf::make_rng(1, sscf::Stream::kOptimizer);
    benchmark::DoNotOptimize(sscf::allocate(s, p, kBand, sscf::Precoder::ZF, h, {}, rng));
  }
}
BENCHMARK(BM_Allocate)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_HierarchicalClustering(benchmark::State& state) {
  const auto s = make(32, 10);
  const sscf::AntennaParams p;
  for (auto _ : state) benchmark::DoNotOptimize(sscf::hierarchical_clustering(s, p, kBand));
}
BENCHMARK(BM_HierarchicalClustering)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
