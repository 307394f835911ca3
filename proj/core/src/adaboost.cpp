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


#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "stabcv/error.hpp"
#include "stabcv/learners.hpp"

namespace stabcv {

AdaboostModel::AdaboostModel(
    std::size_t dim, std::vector<std::shared_ptr<const Model>> hypotheses,
    std::vector<double> alphas)
    : dim_(dim), hypotheses_(std::move(hypotheses)), alphas_(std::move(alphas)) {
  if (hypotheses_.size() != alphas_.size()) {
    throw InvalidArgument("adaboost: one weight per hypothesis required");
  }
  half_total_ = 0.5 * std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
}

double AdaboostModel::score(std::span<const double> x, double u) const {
  double h = 0.0;
  for (std::size_t s = 0; s < hypotheses_.size(); ++s) {
    h += alphas_[s] * hypotheses_[s]->predict(x, u);
  }
  return h;
}

double AdaboostModel::predict(std::span<const double> x, double u) const {
  return score(x, u) > half_total_ ? 1.0 : 0.0;
}

AdaboostFit fit_adaboost(const LearningSet& train, const WeakLearner& base,
                         std::size_t rounds, std::span<const double> initial) {
  const std::size_t n = train.size();
  if (n == 0) throw InvalidArgument("fit_adaboost: empty training set");
  if (rounds < 1) throw InvalidArgument("fit_adaboost: T must be >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (train[i].y != 0.0 && train[i].y != 1.0) {
      throw InvalidArgument("fit_adaboost: labels must be 0 or 1 (row " +
                            std::to_string(i) + ")");
    }
  }

  std::vector<double> w(n, 1.0);
  if (!initial.empty()) {
    if (initial.size() != n) {
      throw InvalidArgument("fit_adaboost: initial distribution has wrong size");
    }
    for (double v : initial) {
      if (!(v > 0.0)) {
        throw InvalidArgument("fit_adaboost: initial weights must be positive");
      }
    }
    w.assign(initial.begin(), initial.end());
  }

  AdaboostFit out{Predictor(std::make_shared<ConstantModel>(train.dim(), 0.0),
                            LossKind::zero_one()),
                  {},
                  false};
  std::vector<std::shared_ptr<const Model>> hypotheses;
  std::vector<double> alphas;
  std::vector<double> p(n);
  std::vector<std::uint8_t> miss(n);

  for (std::size_t t = 0; t < rounds; ++t) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) p[i] = w[i] / total;

    std::shared_ptr<const Model> phi = base(train, p);
    if (!phi) throw InvalidArgument("fit_adaboost: weak learner returned null");
    double eps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      miss[i] = phi->predict(train[i].x, train[i].u) != train[i].y ? 1 : 0;
      if (miss[i]) eps += p[i];
    }
    if (eps >= 0.5) {
      out.stopped_early = true;
      break;
    }
    if (eps < kAdaboostMinError) eps = kAdaboostMinError;

    AdaboostRound round;
    round.distribution = p;
    round.error = eps;
    round.beta = eps / (1.0 - eps);
    round.alpha = std::log(1.0 / round.beta);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = miss[i] ? p[i] : p[i] * round.beta;
    }
    round.normalizer = std::accumulate(w.begin(), w.end(), 0.0);

    hypotheses.push_back(std::move(phi));
    alphas.push_back(round.alpha);
    out.rounds.push_back(std::move(round));
  }

  out.predictor =
      Predictor(std::make_shared<AdaboostModel>(train.dim(), std::move(hypotheses),
                                                std::move(alphas)),
                LossKind::zero_one());
  return out;
}

}  // namespace stabcv
