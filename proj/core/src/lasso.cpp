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
#include <string>

#include "stabcv/error.hpp"
#include "stabcv/learners.hpp"

namespace stabcv {

namespace {

std::string coord_name(std::size_t j) { return "x" + std::to_string(j); }

void check_index(std::span<const double> x, std::size_t j) {
  if (j >= x.size()) {
    throw InvalidArgument("feature " + coord_name(j) + " out of range");
  }
}

}  // namespace

Feature Feature::coordinate(std::size_t j) {
  Feature f;
  f.name = coord_name(j);
  f.eval = [j](std::span<const double> x) {
    check_index(x, j);
    return x[j];
  };
  f.kind = Kind::kCoordinate;
  f.index = j;
  return f;
}

Feature Feature::power(std::size_t j, int exponent) {
  Feature f;
  f.name = coord_name(j) + "^" + std::to_string(exponent);
  f.eval = [j, exponent](std::span<const double> x) {
    check_index(x, j);
    return std::pow(x[j], exponent);
  };
  f.kind = Kind::kPower;
  f.index = j;
  f.parameter = exponent;
  return f;
}

Feature Feature::constant() {
  Feature f;
  f.name = "1";
  f.eval = [](std::span<const double>) { return 1.0; };
  f.kind = Kind::kConstant;
  return f;
}

Feature Feature::sine(std::size_t j, double frequency) {
  Feature f;
  f.name = "sin(" + coord_name(j) + ")";
  f.eval = [j, frequency](std::span<const double> x) {
    check_index(x, j);
    return std::sin(frequency * x[j]);
  };
  f.kind = Kind::kSine;
  f.index = j;
  f.parameter = frequency;
  return f;
}

Feature Feature::cosine(std::size_t j, double frequency) {
  Feature f;
  f.name = "cos(" + coord_name(j) + ")";
  f.eval = [j, frequency](std::span<const double> x) {
    check_index(x, j);
    return std::cos(frequency * x[j]);
  };
  f.kind = Kind::kCosine;
  f.index = j;
  f.parameter = frequency;
  return f;
}

LinearDictionaryModel::LinearDictionaryModel(std::size_t dim,
                                             std::vector<Feature> dictionary,
                                             std::vector<double> coefficients)
    : dim_(dim),
      dictionary_(std::move(dictionary)),
      coefficients_(std::move(coefficients)) {
  if (dictionary_.size() != coefficients_.size()) {
    throw InvalidArgument("linear model: one coefficient per feature required");
  }
}

double LinearDictionaryModel::predict(std::span<const double> x,
                                      double) const {
  double s = 0.0;
  for (std::size_t j = 0; j < dictionary_.size(); ++j) {
    if (coefficients_[j] != 0.0) s += coefficients_[j] * dictionary_[j].eval(x);
  }
  return s;
}

LassoFit fit_lasso(const LearningSet& train, std::span<const Feature> dictionary,
                   double tuning_constant, LossKind loss,
                   const LassoOptions& options) {
  const std::size_t n = train.size();
  const std::size_t m = dictionary.size();
  if (n == 0) throw InvalidArgument("fit_lasso: empty training set");
  if (m == 0) throw InvalidArgument("fit_lasso: empty dictionary");
  if (!(tuning_constant > 0.0)) {
    throw InvalidArgument("fit_lasso: tuning constant A must be positive");
  }

  const double nn = static_cast<double>(n);
  // Column-major design matrix F[j][i] = f_j(x_i).
  std::vector<std::vector<double>> f(m, std::vector<double>(n));
  std::vector<double> sq_norm(m, 0.0);  // |f_j|_n^2
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = dictionary[j].eval(train[i].x);
      if (!std::isfinite(v)) {
        throw InvalidArgument("fit_lasso: feature " + dictionary[j].name +
                              " is not finite at row " + std::to_string(i));
      }
      f[j][i] = v;
      sq_norm[j] += v * v;
    }
    sq_norm[j] /= nn;
  }

  LassoFit out{Predictor(std::make_shared<ConstantModel>(train.dim(), 0.0), loss),
               std::vector<double>(m, 0.0),
               std::vector<double>(m, 0.0),
               tuning_constant * std::sqrt(std::log(static_cast<double>(m)) / nn),
               0,
               0};
  for (std::size_t j = 0; j < m; ++j) {
    out.penalty_weights[j] = out.tuning * std::sqrt(sq_norm[j]);
  }

  std::vector<double>& lambda = out.coefficients;
  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = train[i].y;

  bool converged = false;
  while (out.sweeps < options.max_sweeps) {
    ++out.sweeps;
    double max_change = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (sq_norm[j] == 0.0) continue;
      double rho = 0.0;
      for (std::size_t i = 0; i < n; ++i) rho += f[j][i] * residual[i];
      rho = rho / nn + sq_norm[j] * lambda[j];
      const double w = out.penalty_weights[j];
      const double shrunk =
          rho > w ? rho - w : (rho < -w ? rho + w : 0.0);
      const double next = shrunk / sq_norm[j];
      const double delta = next - lambda[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < n; ++i) residual[i] -= delta * f[j][i];
        lambda[j] = next;
      }
      max_change = std::max(max_change, std::abs(delta));
    }
    if (max_change < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NotConverged("fit_lasso: no convergence after " +
                           std::to_string(out.sweeps) + " sweeps",
                       lambda, out.sweeps);
  }

  out.nonzero = static_cast<std::size_t>(
      std::count_if(lambda.begin(), lambda.end(),
                    [](double v) { return v != 0.0; }));
  out.predictor = Predictor(
      std::make_shared<LinearDictionaryModel>(
          train.dim(), std::vector<Feature>(dictionary.begin(), dictionary.end()),
          lambda),
      loss);
  return out;
}

}  // namespace stabcv
