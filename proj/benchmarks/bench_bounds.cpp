// Copyright 2026 The stabcv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "stabcv/bounds.hpp"

namespace stabcv {
namespace {

void BM_GenericTail(benchmark::State& state) {
  double eps = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generic_stability_tail(1000, 0.1, eps, 0.5, 1.0, 1e-3));
    eps = eps < 1.0 ? eps + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_GenericTail);

void BM_UniformStrongTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        uniform_stability_tail_strong(1000, 0.001, 0.5, 0.01, 1.0, 0.0, 0.0));
  }
}
BENCHMARK(BM_UniformStrongTail);

// Dominated by the running-minimum search.
void BM_UniformWeakTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        uniform_stability_tail_weak(1000, 0.001, 0.5, 0.01, 1.0, 1e-6, 3e-6));
  }
}
BENCHMARK(BM_UniformWeakTail);

void BM_VcBaseline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vc_baseline(10000, 0.2, 0.3, 3.0));
}
BENCHMARK(BM_VcBaseline);

void BM_OptimalSplit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_split(L1Kind::kWeakGeneral, 1000, 0.4));
  }
}
BENCHMARK(BM_OptimalSplit);

}  // namespace
}  // namespace stabcv

BENCHMARK_MAIN();
