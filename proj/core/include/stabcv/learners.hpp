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

// Learning algorithms: each maps a (sub)sample to an immutable Predictor.
//
//   k-NN               fit_knn          distance, then |u_j - u|, then index
//   kernel ridge       fit_regnet       (K + n lambda I) c = y
//   finite-class ERM   fit_erm_finite   argmin empirical risk, first on ties
//   boosting           fit_adaboost     reweighting with beta_t^(1 - a_i)
//   l1-penalized LS    fit_lasso        cyclic coordinate descent
//
// Learner bundles one of these with its loss so that cross-validation and the
// experiment harness can refit it on arbitrary subsamples.

#ifndef STABCV_LEARNERS_HPP_
#define STABCV_LEARNERS_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stabcv/data.hpp"
#include "stabcv/predictor.hpp"
#include "stabcv/resampling.hpp"

namespace stabcv {

enum class Task { kClassification, kRegression };

// ---------------------------------------------------------------------------
// k nearest neighbours

// Neighbours of query (x, u) are ranked by Euclidean distance, then by
// |u_j - u|, then by index. Classification takes the majority label among the
// k nearest (a tied vote goes to the tied label whose best neighbour ranks
// first); regression takes their mean.
class KnnModel final : public Model {
 public:
  KnnModel(LearningSet train, std::size_t k, Task task);

  std::size_t dim() const noexcept override { return train_.dim(); }
  double predict(std::span<const double> x, double u) const override;
  std::vector<double> tiebreak_breakpoints(
      std::span<const double> x) const override;

  // Indices of the k nearest training rows, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> x,
                                      double u) const;

 private:
  LearningSet train_;
  std::size_t k_;
  Task task_;
};

Predictor fit_knn(const LearningSet& train, std::size_t k,
                  Task task = Task::kClassification,
                  LossKind loss = LossKind::zero_one());

// ---------------------------------------------------------------------------
// Regularization network (kernel ridge regression)

struct Kernel {
  enum class Kind { kGaussian, kLinear };

  Kind kind = Kind::kGaussian;
  double gamma = 1.0;  // gaussian: exp(-gamma |x - x'|^2)

  static Kernel gaussian(double gamma);
  // x . x' + 1
  static Kernel linear() noexcept { return {Kind::kLinear, 0.0}; }

  double operator()(std::span<const double> a,
                    std::span<const double> b) const noexcept;
};

class RegnetModel final : public Model {
 public:
  RegnetModel(std::vector<std::vector<double>> centers,
              std::vector<double> coefficients, Kernel kernel);

  std::size_t dim() const noexcept override { return dim_; }
  double predict(std::span<const double> x, double u) const override;

  std::span<const double> coefficients() const noexcept {
    return coefficients_;
  }

 private:
  std::vector<std::vector<double>> centers_;
  std::vector<double> coefficients_;
  Kernel kernel_;
  std::size_t dim_;
};

// Minimizer of (1/n) sum (y_i - phi(x_i))^2 + lambda_reg |phi|_H^2. Throws
// InvalidArgument for lambda_reg <= 0 or an empty set, NumericalError if the
// system is not positive definite.
Predictor fit_regnet(const LearningSet& train, const Kernel& kernel,
                     double lambda_reg,
                     LossKind loss = LossKind::squared_clipped(1.0));

// ---------------------------------------------------------------------------
// Empirical risk minimization over a finite class

// Index of the hypothesis with the smallest empirical risk (first on ties).
std::size_t erm_argmin(const LearningSet& train,
                       std::span<const Predictor> hypotheses);

Predictor fit_erm_finite(const LearningSet& train,
                         std::span<const Predictor> hypotheses);

// phi(x) = (x[feature] > threshold) ? above : below
class StumpModel final : public Model {
 public:
  StumpModel(std::size_t dim, std::size_t feature, double threshold,
             double below, double above);

  std::size_t dim() const noexcept override { return dim_; }
  double predict(std::span<const double> x, double u) const override;

  std::size_t feature() const noexcept { return feature_; }
  double threshold() const noexcept { return threshold_; }
  double below() const noexcept { return below_; }
  double above() const noexcept { return above_; }

 private:
  std::size_t dim_;
  std::size_t feature_;
  double threshold_;
  double below_;
  double above_;
};

class ConstantModel final : public Model {
 public:
  ConstantModel(std::size_t dim, double value) : dim_(dim), value_(value) {}

  std::size_t dim() const noexcept override { return dim_; }
  double predict(std::span<const double>, double) const override {
    return value_;
  }

 private:
  std::size_t dim_;
  double value_;
};

// Ignores the data entirely.
Predictor fit_constant(const LearningSet& train, double value,
                       LossKind loss = LossKind::zero_one());

// ---------------------------------------------------------------------------
// Adaboost

// A weak learner fits a {0,1}-valued model to data under a weight
// distribution over the rows.
using WeakLearner = std::function<std::shared_ptr<const Model>(
    const LearningSet&, std::span<const double>)>;

// Decision stump minimizing the weighted zero-one error over every feature,
// every midpoint threshold and both polarities.
std::shared_ptr<const Model> fit_weighted_stump(
    const LearningSet& train, std::span<const double> weights);

struct AdaboostRound {
  std::vector<double> distribution;  // p^(t), sums to 1
  double error = 0.0;                // epsilon_t (after clamping)
  double beta = 0.0;                 // epsilon_t / (1 - epsilon_t)
  double alpha = 0.0;                // ln(1 / beta_t)
  double normalizer = 0.0;           // Z_{t+1}
};

// H_T(x) = sum_s alpha_s phi^(s)(x), classified as 1 when H_T(x) exceeds
// half the total weight sum_s alpha_s.
class AdaboostModel final : public Model {
 public:
  AdaboostModel(std::size_t dim,
                std::vector<std::shared_ptr<const Model>> hypotheses,
                std::vector<double> alphas);

  std::size_t dim() const noexcept override { return dim_; }
  double predict(std::span<const double> x, double u) const override;
  double score(std::span<const double> x, double u) const;

  std::span<const double> alphas() const noexcept { return alphas_; }

 private:
  std::size_t dim_;
  std::vector<std::shared_ptr<const Model>> hypotheses_;
  std::vector<double> alphas_;
  double half_total_ = 0.0;
};

struct AdaboostFit {
  Predictor predictor;
  std::vector<AdaboostRound> rounds;  // one entry per accepted round
  bool stopped_early = false;         // a round had epsilon_t >= 1/2
};

inline constexpr double kAdaboostMinError = 1e-10;

// Labels must be 0 or 1. A round with zero weighted error is clamped to
// kAdaboostMinError; a round with error >= 1/2 ends boosting and the
// ensemble of the rounds before it is returned. `initial` defaults to the
// uniform distribution.
AdaboostFit fit_adaboost(const LearningSet& train, const WeakLearner& base,
                         std::size_t rounds,
                         std::span<const double> initial = {});

// ---------------------------------------------------------------------------
// Lasso

struct Feature {
  enum class Kind { kCoordinate, kPower, kConstant, kSine, kCosine, kCustom };

  std::string name;
  std::function<double(std::span<const double>)> eval;
  // Construction parameters, kept for serialization.
  Kind kind = Kind::kCustom;
  std::size_t index = 0;
  double parameter = 0.0;  // exponent or frequency

  static Feature coordinate(std::size_t j);
  static Feature power(std::size_t j, int exponent);
  static Feature constant();
  static Feature sine(std::size_t j, double frequency);
  static Feature cosine(std::size_t j, double frequency);
};

class LinearDictionaryModel final : public Model {
 public:
  LinearDictionaryModel(std::size_t dim, std::vector<Feature> dictionary,
                        std::vector<double> coefficients);

  std::size_t dim() const noexcept override { return dim_; }
  double predict(std::span<const double> x, double u) const override;

 private:
  std::size_t dim_;
  std::vector<Feature> dictionary_;
  std::vector<double> coefficients_;
};

struct LassoOptions {
  std::size_t max_sweeps = 10000;
  double tolerance = 1e-8;  // on the largest coefficient change in a sweep
};

struct LassoFit {
  Predictor predictor;
  std::vector<double> coefficients;
  std::vector<double> penalty_weights;  // omega_{n,j} = r_{n,M} |f_j|_n
  double tuning = 0.0;                  // r_{n,M} = A sqrt(log(M) / n)
  std::size_t nonzero = 0;              // M(lambda-hat)
  std::size_t sweeps = 0;
};

// Minimizes (1/n) sum (y_i - f_lambda(x_i))^2 + 2 sum_j omega_j |lambda_j|.
// Throws NotConverged (carrying the last iterate) at the sweep limit.
LassoFit fit_lasso(const LearningSet& train, std::span<const Feature> dictionary,
                   double tuning_constant,
                   LossKind loss = LossKind::squared_clipped(1.0),
                   const LassoOptions& options = {});

// ---------------------------------------------------------------------------
// Learner: a refittable algorithm plus its loss

struct KnnSpec {
  std::size_t k = 1;
  Task task = Task::kClassification;
};

struct RegnetSpec {
  Kernel kernel;
  double lambda_reg = 0.1;
};

struct ErmSpec {
  std::vector<std::shared_ptr<const Model>> hypotheses;
};

struct AdaboostSpec {
  std::size_t rounds = 10;
};

struct LassoSpec {
  std::vector<Feature> dictionary;
  double tuning_constant = 1.0;
  LassoOptions options;
};

struct ConstantSpec {
  double value = 0.0;
};

using LearnerSpec = std::variant<KnnSpec, RegnetSpec, ErmSpec, AdaboostSpec,
                                 LassoSpec, ConstantSpec>;

class Learner {
 public:
  Learner(LearnerSpec spec, LossKind loss);

  Predictor fit(const LearningSet& train) const;

  // Predictions on the test rows of each mask (in row order), computed
  // without refitting when the algorithm admits a closed form. Only the
  // kernel ridge learner does; everything else returns nullopt.
  std::optional<std::vector<std::vector<double>>> held_out_predictions(
      const LearningSet& data, std::span<const WeightedMask> masks) const;

  const LearnerSpec& spec() const noexcept { return spec_; }
  const LossKind& loss() const noexcept { return loss_; }
  std::string_view name() const noexcept;

 private:
  LearnerSpec spec_;
  LossKind loss_;
};

}  // namespace stabcv

#endif  // STABCV_LEARNERS_HPP_
