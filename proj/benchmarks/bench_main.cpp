// Copyright 2026 The ghawkes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "ghawkes/grid_operator.hpp"
#include "ghawkes/graph.hpp"
#include "ghawkes/macro.hpp"
#include "ghawkes/micro.hpp"
#include "ghawkes/rate_tree.hpp"
#include "ghawkes/rng.hpp"

namespace {

using namespace ghawkes;

void BM_RateTreeSetSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RateTree tree(n);
  RandomStream rng(7);
  for (std::size_t i = 0; i < n; ++i) tree.set(i, rng.uniform());
  for (auto _ : state) {
    const std::size_t i = tree.sample(rng.uniform());
    tree.set(i, rng.uniform());
    benchmark::DoNotOptimize(i);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RateTreeSetSample)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_RateTreeRebuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RateTree tree(n);
  for (std::size_t i = 0; i < n; ++i) tree.set_leaf(i, 1.0);
  for (auto _ : state) {
    tree.rebuild();
    benchmark::DoNotOptimize(tree.total());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RateTreeRebuild)->Arg(1 << 10)->Arg(1 << 14);

void BM_SampleGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = SpatialKernel::exp_distance(0.5);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto g = sample_graph(n, 1.0, w, seed++);
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_SampleGraph)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SpectralRadius(benchmark::State& state) {
  const GridOperator op(SpatialKernel::exp_distance(0.5), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(op).value);
}
BENCHMARK(BM_SpectralRadius)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_FixedPoint(benchmark::State& state) {
  const GridOperator op(SpatialKernel::constant(1.0), 512);
  const auto f = SynapticResponse::linear(1.0);
  const auto h = MemoryKernel::exponential(2.0);
  const MacroField eta(512, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point(op, f, h, eta).iters);
}
BENCHMARK(BM_FixedPoint)->Unit(benchmark::kMillisecond);

// Throughput in accepted spikes per second on the complete graph.
void BM_SimulateExponential(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = sample_graph(n, 1.0, SpatialKernel::constant(1.0), 3);
  const auto f = SynapticResponse::linear(1.0);
  const auto drive = ExogenousDrive::stationary(ScalarFunction::constant(0.0));
  std::uint64_t seed = 11;
  std::uint64_t spikes = 0;
  for (auto _ : state) {
    const auto r = simulate_exponential(g, f, 2.0, drive, 5.0, seed++);
    spikes += r.stats.acceptances;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(spikes));
}
BENCHMARK(BM_SimulateExponential)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SimulateGeneralH(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = sample_graph(n, 1.0, SpatialKernel::constant(1.0), 3);
  const auto f = SynapticResponse::linear(1.0);
  const auto h = MemoryKernel::tabulate(MemoryKernel::exponential(2.0), 0.01, 6.0);
  const auto drive = ExogenousDrive::stationary(ScalarFunction::constant(0.0));
  std::uint64_t seed = 11;
  std::uint64_t spikes = 0;
  for (auto _ : state) {
    const auto r = simulate_general_h(g, f, h, drive, 2.0, seed++);
    spikes += r.stats.acceptances;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(spikes));
}
BENCHMARK(BM_SimulateGeneralH)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
