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

#include "stabcv/estimation.hpp"
#include "stabcv/laws.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/random.hpp"
#include "stabcv/resampling.hpp"

namespace stabcv {
namespace {

SyntheticDistribution regression_law() {
  return SyntheticDistribution::gaussian_regression(
      {0.5, -0.3}, 0.2, 0.1, SyntheticDistribution::XLaw::kUniform, 0.0, 1.0);
}

void BM_RegnetFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_stream(1, n, StreamTag::kData);
  const LearningSet data = regression_law().sample(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_regnet(data, Kernel::gaussian(1.0), 0.1));
  }
}
BENCHMARK(BM_RegnetFit)->Arg(50)->Arg(100)->Arg(200);

void BM_RegnetLoo(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bool closed = state.range(1) != 0;
  Rng rng = make_stream(2, n, StreamTag::kData);
  const LearningSet data = regression_law().sample(n, rng);
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
  const auto scheme = build_scheme(n, SchemeKind::kLeaveOneOut);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cv_estimate(reg, data, scheme, CvOptions{closed, 1}));
  }
}
BENCHMARK(BM_RegnetLoo)->Args({50, 1})->Args({50, 0})->Args({100, 1})->Args({100, 0});

void BM_KnnKfold(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_stream(3, n, StreamTag::kData);
  const auto law = SyntheticDistribution::two_class_gaussian({0.0, 0.0}, {1.0, 1.0}, 1.0, 0.5);
  const LearningSet data = law.sample(n, rng);
  const Learner knn(KnnSpec{5, Task::kClassification}, LossKind::zero_one());
  SchemeParams kp;
  kp.k = 10;
  const auto scheme = build_scheme(n, SchemeKind::kKFold, kp);
  for (auto _ : state) benchmark::DoNotOptimize(cv_estimate(knn, data, scheme));
}
BENCHMARK(BM_KnnKfold)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace stabcv

BENCHMARK_MAIN();
