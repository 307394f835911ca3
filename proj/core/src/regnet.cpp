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
#include <map>
#include <memory>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "stabcv/error.hpp"
#include "stabcv/learners.hpp"
#include "regnet_detail.hpp"

namespace stabcv {

Kernel Kernel::gaussian(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gaussian kernel needs gamma > 0");
  }
  return {Kind::kGaussian, gamma};
}

double Kernel::operator()(std::span<const double> a,
                          std::span<const double> b) const noexcept {
  double s = 0.0;
  if (kind == Kind::kLinear) {
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s + 1.0;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::exp(-gamma * s);
}

RegnetModel::RegnetModel(std::vector<std::vector<double>> centers,
                         std::vector<double> coefficients, Kernel kernel)
    : centers_(std::move(centers)),
      coefficients_(std::move(coefficients)),
      kernel_(kernel),
      dim_(centers_.empty() ? 0 : centers_.front().size()) {}

double RegnetModel::predict(std::span<const double> x, double) const {
  double s = 0.0;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    s += coefficients_[i] * kernel_(centers_[i], x);
  }
  return s;
}

namespace detail {

Eigen::MatrixXd gram_matrix(const LearningSet& data, const Kernel& kernel) {
  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel(data[static_cast<std::size_t>(i)].x,
                              data[static_cast<std::size_t>(j)].x);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

}  // namespace detail

namespace {

void check_lambda(double lambda_reg) {
  if (!(lambda_reg > 0.0) || !std::isfinite(lambda_reg)) {
    throw InvalidArgument("fit_regnet: lambda_reg must be positive and finite");
  }
}

}  // namespace

Predictor fit_regnet(const LearningSet& train, const Kernel& kernel,
                     double lambda_reg, LossKind loss) {
  check_lambda(lambda_reg);
  if (train.empty()) throw InvalidArgument("fit_regnet: empty training set");
  const auto n = static_cast<Eigen::Index>(train.size());

  Eigen::MatrixXd a = detail::gram_matrix(train, kernel);
  a.diagonal().array() += static_cast<double>(n) * lambda_reg;
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = train[static_cast<std::size_t>(i)].y;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("fit_regnet: kernel system is not positive definite");
  }
  const Eigen::VectorXd c = llt.solve(y);
  if (!c.allFinite()) {
    throw NumericalError("fit_regnet: non-finite coefficients");
  }

  std::vector<std::vector<double>> centers;
  centers.reserve(train.size());
  for (const Example& z : train.examples()) centers.push_back(z.x);
  return Predictor(
      std::make_shared<RegnetModel>(std::move(centers),
                                    std::vector<double>(c.data(), c.data() + n),
                                    kernel),
      loss);
}

namespace detail {

// With A = K + m lambda I over all n rows and B = A^{-1}, the fit on the
// training rows S (|S| = m) predicts y_T - (B_TT)^{-1} (B y)_T on the test
// rows T = complement of S.
std::vector<std::vector<double>> regnet_held_out(
    const LearningSet& data, const Kernel& kernel, double lambda_reg,
    std::span<const WeightedMask> masks) {
  check_lambda(lambda_reg);
  const auto n = static_cast<Eigen::Index>(data.size());
  const Eigen::MatrixXd gram = gram_matrix(data, kernel);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = data[static_cast<std::size_t>(i)].y;
  }

  struct Factor {
    Eigen::MatrixXd b;
    Eigen::VectorXd c;
  };
  std::map<std::size_t, Factor> by_size;
  auto factor_for = [&](std::size_t m) -> const Factor& {
    auto it = by_size.find(m);
    if (it != by_size.end()) return it->second;
    Eigen::MatrixXd a = gram;
    a.diagonal().array() += static_cast<double>(m) * lambda_reg;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
      throw NumericalError(
          "regnet closed form: kernel system is not positive definite");
    }
    Factor f;
    f.b = llt.solve(Eigen::MatrixXd::Identity(n, n));
    f.c = f.b * y;
    return by_size.emplace(m, std::move(f)).first->second;
  };

  std::vector<std::vector<double>> out;
  out.reserve(masks.size());
  for (const WeightedMask& wm : masks) {
    if (wm.train.size() != data.size()) {
      throw InvalidArgument("regnet closed form: mask length mismatch");
    }
    const Factor& f = factor_for(wm.train.count());
    std::vector<Eigen::Index> test;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!wm.train[i]) test.push_back(static_cast<Eigen::Index>(i));
    }
    const auto t = static_cast<Eigen::Index>(test.size());
    Eigen::MatrixXd btt(t, t);
    Eigen::VectorXd ct(t);
    for (Eigen::Index a = 0; a < t; ++a) {
      ct(a) = f.c(test[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < t; ++b) {
        btt(a, b) = f.b(test[static_cast<std::size_t>(a)],
                        test[static_cast<std::size_t>(b)]);
      }
    }
    Eigen::VectorXd correction;
    if (t == 1) {
      correction = ct / btt(0, 0);
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(btt);
      if (llt.info() != Eigen::Success) {
        throw NumericalError("regnet closed form: singular test block");
      }
      correction = llt.solve(ct);
    }
    std::vector<double> pred(test.size());
    for (std::size_t a = 0; a < test.size(); ++a) {
      pred[a] = y(test[a]) - correction(static_cast<Eigen::Index>(a));
    }
    out.push_back(std::move(pred));
  }
  return out;
}

}  // namespace detail

}  // namespace stabcv
