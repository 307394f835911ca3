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


#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "stabcv/error.hpp"
#include "stabcv/learners.hpp"

namespace stabcv {

namespace {

double squared_distance(std::span<const double> a,
                        std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

struct Ranked {
  double dist;
  double tie;
  std::size_t index;

  bool operator<(const Ranked& o) const noexcept {
    if (dist != o.dist) return dist < o.dist;
    if (tie != o.tie) return tie < o.tie;
    return index < o.index;
  }
};

}  // namespace

KnnModel::KnnModel(LearningSet train, std::size_t k, Task task)
    : train_(std::move(train)), k_(k), task_(task) {
  if (train_.empty()) throw InvalidArgument("fit_knn: empty training set");
  if (k_ < 1 || k_ > train_.size()) {
    throw InvalidArgument("fit_knn: k=" + std::to_string(k_) +
                          " outside [1, " + std::to_string(train_.size()) +
                          "]");
  }
}

std::vector<std::size_t> KnnModel::neighbours(std::span<const double> x,
                                              double u) const {
  std::vector<Ranked> ranked(train_.size());
  for (std::size_t j = 0; j < train_.size(); ++j) {
    ranked[j] = {squared_distance(train_[j].x, x), std::abs(train_[j].u - u),
                 j};
  }
  std::partial_sort(ranked.begin(),
                    ranked.begin() + static_cast<std::ptrdiff_t>(k_),
                    ranked.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = ranked[i].index;
  return out;
}

double KnnModel::predict(std::span<const double> x, double u) const {
  const auto nn = neighbours(x, u);
  if (task_ == Task::kRegression) {
    double s = 0.0;
    for (std::size_t j : nn) s += train_[j].y;
    return s / static_cast<double>(nn.size());
  }
  // Labels in order of first appearance, i.e. by best-ranked neighbour, so
  // a strict > keeps the earliest label among equal counts.
  std::vector<std::pair<double, std::size_t>> votes;
  for (std::size_t j : nn) {
    const double y = train_[j].y;
    auto it = std::find_if(votes.begin(), votes.end(),
                           [y](const auto& v) { return v.first == y; });
    if (it == votes.end()) {
      votes.emplace_back(y, 1);
    } else {
      ++it->second;
    }
  }
  auto best = votes.begin();
  for (auto it = votes.begin(); it != votes.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

std::vector<double> KnnModel::tiebreak_breakpoints(
    std::span<const double> x) const {
  const std::size_t n = train_.size();
  std::vector<std::pair<double, std::size_t>> by_dist(n);
  for (std::size_t j = 0; j < n; ++j) {
    by_dist[j] = {squared_distance(train_[j].x, x), j};
  }
  std::sort(by_dist.begin(), by_dist.end());
  const double kth = by_dist[k_ - 1].first;

  // Only rows sharing a distance can swap rank as u moves, and swapping two
  // rows with the same label changes neither the vote nor the mean.
  std::vector<double> cuts;
  std::size_t start = 0;
  while (start < n && by_dist[start].first <= kth) {
    std::size_t end = start + 1;
    while (end < n && by_dist[end].first == by_dist[start].first) ++end;
    for (std::size_t a = start; a < end; ++a) {
      const Example& za = train_[by_dist[a].second];
      for (std::size_t b = a + 1; b < end; ++b) {
        const Example& zb = train_[by_dist[b].second];
        if (za.y != zb.y && za.u != zb.u) cuts.push_back(0.5 * (za.u + zb.u));
      }
    }
    start = end;
  }
  return cuts;
}

Predictor fit_knn(const LearningSet& train, std::size_t k, Task task,
                  LossKind loss) {
  return Predictor(std::make_shared<KnnModel>(train, k, task), loss);
}

}  // namespace stabcv
