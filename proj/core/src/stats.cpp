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


#include "stabcv/stats.hpp"

#include <algorithm>
#include <cmath>

#include "stabcv/error.hpp"

namespace stabcv {

double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanEstimate mean_with_stderr(std::span<const double> values) {
  MeanEstimate out;
  out.count = values.size();
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - out.mean;
      sq[i] = d * d;
    }
    out.std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  }
  return out;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z) {
  if (trials == 0) throw InvalidArgument("wilson_interval: zero trials");
  if (successes > trials) {
    throw InvalidArgument("wilson_interval: successes exceed trials");
  }
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;

  WilsonInterval w;
  w.point = phat;
  w.lower = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, phat);
  w.upper = successes == trials ? 1.0 : std::clamp(center + half, phat, 1.0);
  return w;
}

double empirical_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("empirical_quantile: no data");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidArgument("empirical_quantile: q outside [0, 1]");
  }
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double binomial_coefficient(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(count - 1);
  }
  if (count > 1) out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > 0.0)) {
    throw InvalidArgument("logspace: endpoints must be positive");
  }
  std::vector<double> out = linspace(std::log(lo), std::log(hi), count);
  for (double& v : out) v = std::exp(v);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

}  // namespace stabcv
