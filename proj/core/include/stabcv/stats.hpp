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

#ifndef STABCV_STATS_HPP_
#define STABCV_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace stabcv {

// Sum in a fixed binary-tree order. The result depends only on the values
// and their order, never on how they were produced.
double pairwise_sum(std::span<const double> values) noexcept;

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // of the mean, n - 1 denominator
  std::size_t count = 0;
};

MeanEstimate mean_with_stderr(std::span<const double> values);

struct WilsonInterval {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  double half_width() const noexcept { return 0.5 * (upper - lower); }
};

// Wilson score interval for `successes` out of `trials` at normal quantile z.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z);

// Empirical q-quantile by the inverse-CDF rule: the ceil(q * n)-th order
// statistic (1-based), clamped to the sample. `sorted` must be ascending.
double empirical_quantile(std::span<const double> sorted, double q);

// n choose k as a double (exact while below 2^53).
double binomial_coefficient(std::size_t n, std::size_t k) noexcept;

std::vector<double> linspace(double lo, double hi, std::size_t count);
std::vector<double> logspace(double lo, double hi, std::size_t count);

}  // namespace stabcv

#endif  // STABCV_STATS_HPP_
