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

#include "stabcv/laws.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/resampling.hpp"
#include "stabcv/stability.hpp"

namespace stabcv {
namespace {

void BM_EstimateProfileRegnet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto law = SyntheticDistribution::gaussian_regression(
      {0.5}, 0.25, 0.1, SyntheticDistribution::XLaw::kUniform, 0.0, 1.0);
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
  const auto scheme = build_scheme(n, SchemeKind::kLeaveOneOut);
  ProfileOptions o;
  o.kind = StabilityKind::kWeak;
  o.reps = 100;
  o.probe_grid = 128;
  o.eval_sample = 64;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_profile(reg, scheme, law, o));
}
BENCHMARK(BM_EstimateProfileRegnet)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EstimateProfileKnn(benchmark::State& state) {
  const auto law = SyntheticDistribution::discrete(
      {{{0.0}, 0.0, 0.3}, {{0.0}, 1.0, 0.2}, {{1.0}, 1.0, 0.3}, {{1.0}, 0.0, 0.2}});
  const Learner knn(KnnSpec{3, Task::kClassification}, LossKind::zero_one());
  SchemeParams kp;
  kp.k = 5;
  const auto scheme = build_scheme(50, SchemeKind::kKFold, kp);
  ProfileOptions o;
  o.kind = StabilityKind::kCvWeak;
  o.distance = Distance::kL1;
  o.reps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_profile(knn, scheme, law, o));
}
BENCHMARK(BM_EstimateProfileKnn)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace stabcv

BENCHMARK_MAIN();
