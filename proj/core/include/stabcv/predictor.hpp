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

#ifndef STABCV_PREDICTOR_HPP_
#define STABCV_PREDICTOR_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "stabcv/data.hpp"

namespace stabcv {

enum class LossType { kZeroOne, kSquaredClipped };

// Loss bounded in [0, 1]: zero-one for classification, min((y - yhat)^2 / M, 1)
// for regression with declared bound M.
struct LossKind {
  LossType type = LossType::kZeroOne;
  double bound = 1.0;  // M, squared-clipped only

  static LossKind zero_one() noexcept { return {LossType::kZeroOne, 1.0}; }
  static LossKind squared_clipped(double m);

  double operator()(double y, double prediction) const noexcept;

  friend bool operator==(const LossKind&, const LossKind&) = default;
};

std::string_view to_string(LossType type) noexcept;

// A fitted hypothesis phi. Implementations are immutable after construction,
// so a Model may be evaluated from many threads at once.
class Model {
 public:
  virtual ~Model() = default;

  // Input dimension, or 0 when the model accepts any dimension.
  virtual std::size_t dim() const noexcept = 0;
  virtual double predict(std::span<const double> x, double u) const = 0;

  // Query tie-break values u in (0, 1) at which predict(x, u) may change.
  // Models that ignore u return nothing.
  virtual std::vector<double> tiebreak_breakpoints(
      std::span<const double> /*x*/) const {
    return {};
  }
};

// psi(z) = L(y, phi(x)): a model paired with its loss.
class Predictor {
 public:
  Predictor(std::shared_ptr<const Model> model, LossKind loss);

  static Predictor from_function(
      std::size_t dim, std::function<double(std::span<const double>)> phi,
      LossKind loss);

  double predict(const Example& z) const;
  // Throws InvalidArgument on a dimension mismatch.
  double eval_loss(const Example& z) const;

  const Model& model() const noexcept { return *model_; }
  std::shared_ptr<const Model> shared_model() const noexcept {
    return model_;
  }
  const LossKind& loss() const noexcept { return loss_; }
  std::size_t dim() const noexcept { return model_->dim(); }

 private:
  std::shared_ptr<const Model> model_;
  LossKind loss_;
};

inline double eval_loss(const Predictor& p, const Example& z) {
  return p.eval_loss(z);
}

// Partition of the query tie-break range [0, 1] into cells on which every
// given predictor's output at x is constant. Each cell is represented by an
// interior point and its length; the lengths sum to 1.
struct TiebreakCell {
  double u;
  double weight;
};

std::vector<TiebreakCell> tiebreak_cells(
    std::span<const Predictor* const> predictors, std::span<const double> x);

}  // namespace stabcv

#endif  // STABCV_PREDICTOR_HPP_
