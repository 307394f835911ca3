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

#ifndef STABCV_DATA_HPP_
#define STABCV_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace stabcv {

class BinaryVector;

// One observation z = (x, y) plus the tie-break uniform u that nearest
// neighbour rules use to order equidistant points. u is drawn once when the
// example is created and travels with it through every subsample.
struct Example {
  std::vector<double> x;
  double y = 0.0;
  double u = 0.5;
};

class LearningSet {
 public:
  LearningSet() = default;
  explicit LearningSet(std::vector<Example> examples);

  std::size_t size() const noexcept { return examples_.size(); }
  bool empty() const noexcept { return examples_.empty(); }
  std::size_t dim() const noexcept { return dim_; }

  const Example& operator[](std::size_t i) const noexcept {
    return examples_[i];
  }
  std::span<const Example> examples() const noexcept { return examples_; }

  // Rows where the mask is 1, in their original order.
  LearningSet subset(const BinaryVector& mask) const;
  LearningSet without(std::size_t index) const;
  LearningSet with_appended(const Example& z) const;

 private:
  std::vector<Example> examples_;
  std::size_t dim_ = 0;
};

// CSV with a header row. Columns named `y` and (optionally) `u` are the label
// and tie-break uniform; every other column is a feature, in file order.
// Missing u values are drawn from `seed`.
LearningSet load_csv(const std::filesystem::path& path, std::uint64_t seed);

}  // namespace stabcv

#endif  // STABCV_DATA_HPP_
