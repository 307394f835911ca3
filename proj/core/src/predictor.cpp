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


#include "stabcv/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stabcv/error.hpp"

namespace stabcv {

LossKind LossKind::squared_clipped(double m) {
  if (!(m > 0.0)) {
    throw InvalidArgument("squared-clipped loss needs M > 0");
  }
  return {LossType::kSquaredClipped, m};
}

double LossKind::operator()(double y, double prediction) const noexcept {
  if (type == LossType::kZeroOne) return y == prediction ? 0.0 : 1.0;
  const double r = y - prediction;
  const double v = r * r / bound;
  return v < 1.0 ? v : 1.0;  // NaN predictions lose everything
}

std::string_view to_string(LossType type) noexcept {
  return type == LossType::kZeroOne ? "zero-one" : "squared-clipped";
}

namespace {

class FunctionModel final : public Model {
 public:
  FunctionModel(std::size_t dim,
                std::function<double(std::span<const double>)> phi)
      : dim_(dim), phi_(std::move(phi)) {}

  std::size_t dim() const noexcept override { return dim_; }
  double predict(std::span<const double> x, double) const override {
    return phi_(x);
  }

 private:
  std::size_t dim_;
  std::function<double(std::span<const double>)> phi_;
};

}  // namespace

Predictor::Predictor(std::shared_ptr<const Model> model, LossKind loss)
    : model_(std::move(model)), loss_(loss) {
  if (!model_) throw InvalidArgument("Predictor: null model");
}

Predictor Predictor::from_function(
    std::size_t dim, std::function<double(std::span<const double>)> phi,
    LossKind loss) {
  return Predictor(std::make_shared<FunctionModel>(dim, std::move(phi)),
                   loss);
}

double Predictor::predict(const Example& z) const {
  const std::size_t d = model_->dim();
  if (d != 0 && z.x.size() != d) {
    throw InvalidArgument("Predictor: example has dimension " +
                          std::to_string(z.x.size()) + ", model expects " +
                          std::to_string(d));
  }
  return model_->predict(z.x, z.u);
}

double Predictor::eval_loss(const Example& z) const {
  return loss_(z.y, predict(z));
}

std::vector<TiebreakCell> tiebreak_cells(
    std::span<const Predictor* const> predictors, std::span<const double> x) {
  std::vector<double> cuts;
  for (const Predictor* p : predictors) {
    for (double b : p->model().tiebreak_breakpoints(x)) {
      if (b > 0.0 && b < 1.0) cuts.push_back(b);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<TiebreakCell> cells;
  cells.reserve(cuts.size() + 1);
  double left = 0.0;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double right = i < cuts.size() ? cuts[i] : 1.0;
    if (right > left) cells.push_back({0.5 * (left + right), right - left});
    left = right;
  }
  return cells;
}

}  // namespace stabcv
