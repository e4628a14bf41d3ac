// Copyright 2026 The arbf-scaffold Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "arbf/centers.hpp"
#include "arbf/grid.hpp"
#include "arbf/isosurface.hpp"
#include "arbf/rbf.hpp"
#include "fixtures.hpp"

namespace {

using namespace arbf;

const InterpolationModel& hex8_model() {
  static const InterpolationModel model = fit(assemble_center_set(testing::hex_block(2, 2, 2), CenterMode::Anisotropic),
                                              BasisKind{}, CenterMode::Anisotropic);
  return model;
}

VoxelGrid empty_grid(std::size_t resolution) {
  return make_grid({0, 0, 0}, {2, 2, 2}, resolution, 0.05);
}

const VoxelGrid& sampled(std::size_t resolution) {
  static std::map<std::size_t, VoxelGrid> cache;
  auto it = cache.find(resolution);
  if (it == cache.end())
    it = cache.emplace(resolution, sample_field(std::cref(hex8_model()), empty_grid(resolution))).first;
  return it->second;
}

void BM_SampleSerial(benchmark::State& state) {
  const auto res = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field_serial(std::cref(hex8_model()), empty_grid(res)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(res * res * res));
}

void BM_SampleParallel(benchmark::State& state) {
  const auto res = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field(std::cref(hex8_model()), empty_grid(res)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(res * res * res));
}

void BM_MarchingCubesSerial(benchmark::State& state) {
  const auto& grid = sampled(static_cast<std::size_t>(state.range(0)));
  double diag2 = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const double len = grid.spacing[a] * static_cast<double>(grid.dims[a] - 1);
    diag2 += len * len;
  }
  const double tolerance = 1e-9 * std::sqrt(diag2);
  // Welded like the parallel path so both produce the same soup.
  for (auto _ : state) benchmark::DoNotOptimize(weld(marching_cubes_raw(grid, 0.0), tolerance));
}

void BM_MarchingCubesParallel(benchmark::State& state) {
  const auto& grid = sampled(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(marching_cubes(grid, 0.0));
}

BENCHMARK(BM_SampleSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MarchingCubesSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MarchingCubesParallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
