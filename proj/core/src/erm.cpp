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
#include <memory>
#include <numeric>
#include <string>

#include "stabcv/error.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/stats.hpp"

namespace stabcv {

std::size_t erm_argmin(const LearningSet& train,
                       std::span<const Predictor> hypotheses) {
  if (hypotheses.empty()) {
    throw InvalidArgument("fit_erm_finite: empty hypothesis list");
  }
  std::size_t best = 0;
  double best_risk = 0.0;
  std::vector<double> losses(train.size());
  for (std::size_t h = 0; h < hypotheses.size(); ++h) {
    for (std::size_t i = 0; i < train.size(); ++i) {
      losses[i] = hypotheses[h].eval_loss(train[i]);
    }
    const double risk = pairwise_sum(losses);
    if (h == 0 || risk < best_risk) {
      best = h;
      best_risk = risk;
    }
  }
  return best;
}

Predictor fit_erm_finite(const LearningSet& train,
                         std::span<const Predictor> hypotheses) {
  return hypotheses[erm_argmin(train, hypotheses)];
}

StumpModel::StumpModel(std::size_t dim, std::size_t feature, double threshold,
                       double below, double above)
    : dim_(dim),
      feature_(feature),
      threshold_(threshold),
      below_(below),
      above_(above) {
  if (dim_ != 0 && feature_ >= dim_) {
    throw InvalidArgument("stump: feature index out of range");
  }
}

double StumpModel::predict(std::span<const double> x, double) const {
  if (feature_ >= x.size()) {
    throw InvalidArgument("stump: feature index out of range");
  }
  return x[feature_] > threshold_ ? above_ : below_;
}

Predictor fit_constant(const LearningSet& train, double value,
                       LossKind loss) {
  return Predictor(std::make_shared<ConstantModel>(train.dim(), value), loss);
}

std::shared_ptr<const Model> fit_weighted_stump(
    const LearningSet& train, std::span<const double> weights) {
  const std::size_t n = train.size();
  if (n == 0) throw InvalidArgument("weighted stump: empty training set");
  if (weights.size() != n) {
    throw InvalidArgument("weighted stump: weight count mismatch");
  }
  const std::size_t dim = train.dim();
  if (dim == 0) throw InvalidArgument("weighted stump: zero-dimensional x");

  // Errors of every threshold come from running label weights below it.
  double w1_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (train[i].y == 1.0) w1_total += weights[i];
  }
  const double w_total = std::accumulate(weights.begin(), weights.end(), 0.0);

  double best_err = 2.0;
  std::size_t best_feature = 0;
  double best_threshold = 0.0;
  double best_below = 0.0;
  double best_above = 1.0;

  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < dim; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return train[a].x[j] < train[b].x[j];
                     });
    double w0_below = 0.0;
    double w1_below = 0.0;
    auto consider = [&](double threshold) {
      const double w0_above = (w_total - w1_total) - w0_below;
      const double w1_above = w1_total - w1_below;
      // below -> 0, above -> 1
      const double err_a = w1_below + w0_above;
      // below -> 1, above -> 0
      const double err_b = w0_below + w1_above;
      if (err_a < best_err) {
        best_err = err_a;
        best_feature = j;
        best_threshold = threshold;
        best_below = 0.0;
        best_above = 1.0;
      }
      if (err_b < best_err) {
        best_err = err_b;
        best_feature = j;
        best_threshold = threshold;
        best_below = 1.0;
        best_above = 0.0;
      }
    };
    consider(train[order[0]].x[j] - 1.0);  // everything above
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t i = order[r];
      if (train[i].y == 1.0) {
        w1_below += weights[i];
      } else {
        w0_below += weights[i];
      }
      const double here = train[i].x[j];
      if (r + 1 < n) {
        const double next = train[order[r + 1]].x[j];
        if (next > here) consider(here + 0.5 * (next - here));
      }
    }
  }
  return std::make_shared<StumpModel>(dim, best_feature, best_threshold,
                                      best_below, best_above);
}

}  // namespace stabcv
