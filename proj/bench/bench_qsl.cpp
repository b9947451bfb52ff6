// Copyright 2026 The qsl Authors
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

// Serial versus parallel timings of the grid-point kernels. The two
// policies are bit-identical (see the parallel test tag); this target
// only measures the speedup.

#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/fidelity.hpp"
#include "qsl/states.hpp"

namespace {

using namespace qsl;

ComplexMatrix ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

/// A dim-level random Lindblad trajectory shared across iterations.
const Trajectory& trajectory_for(int dim) {
  static std::map<int, Trajectory> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) {
    std::mt19937_64 rng(77 + static_cast<unsigned>(dim));
    LindbladSpec spec;
    spec.dim = dim;
    ComplexMatrix l = ginibre(dim, rng);
    l /= norm_op(l);
    spec.jumps.push_back({l, 1.0});
    const DensityMatrix rho0 = random_density(dim, 2, 11 + dim);
    it = cache.emplace(dim, evolve(spec, rho0, 1.0, 1e-3)).first;
  }
  return it->second;
}

Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_Evolve(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  LindbladSpec spec;
  spec.dim = dim;
  ComplexMatrix l = ginibre(dim, rng);
  l /= norm_op(l);
  spec.jumps.push_back({l, 1.0});
  const DensityMatrix rho0 = random_density(dim, 2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(spec, rho0, 1.0, 1e-3));
  }
}
BENCHMARK(BM_Evolve)->Arg(2)->Arg(4)->Arg(8);

void BM_FidelitySeries(benchmark::State& state) {
  const Trajectory& traj = trajectory_for(static_cast<int>(state.range(0)));
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity_series(FidelityKind::Bures, traj, exec));
  }
}
BENCHMARK(BM_FidelitySeries)
    ->Args({2, 0})
    ->Args({2, 1})
    ->Args({4, 0})
    ->Args({4, 1})
    ->Args({8, 0})
    ->Args({8, 1});

void BM_BoundReport(benchmark::State& state) {
  const Trajectory& traj = trajectory_for(static_cast<int>(state.range(0)));
  ReportContext ctx;
  ctx.opts.exec = exec_of(state);
  std::vector<BoundKind> kinds = {BoundKind::SuperMLop, BoundKind::SuperMThs,
                                  BoundKind::OperatorMT, BoundKind::AlternativeMT};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_report(traj, kinds, ctx));
  }
}
BENCHMARK(BM_BoundReport)->Args({2, 0})->Args({2, 1})->Args({4, 0})->Args({4, 1});

}  // namespace

BENCHMARK_MAIN();
