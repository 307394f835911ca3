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


#include "stabcv/random.hpp"

#include <array>

#include "stabcv/error.hpp"

namespace stabcv {

namespace {

constexpr std::array<unsigned, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                              23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

double radical_inverse(std::uint64_t index, unsigned base) noexcept {
  const double inv_base = 1.0 / base;
  double factor = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv_base;
  }
  return result;
}

std::vector<std::vector<double>> halton_points(std::size_t count,
                                               std::size_t dim) {
  if (dim > kPrimes.size()) {
    throw InvalidArgument("halton_points: dimension above 16 unsupported");
  }
  std::vector<std::vector<double>> points(count, std::vector<double>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      points[i][d] = radical_inverse(i + 1, kPrimes[d]);
    }
  }
  return points;
}

}  // namespace stabcv
