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

#ifndef STABCV_LAWS_HPP_
#define STABCV_LAWS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stabcv/data.hpp"
#include "stabcv/random.hpp"

namespace stabcv {

struct Atom {
  std::vector<double> x;
  double y = 0.0;
  double prob = 0.0;
};

// Axis-aligned box covering (almost all of) a law's mass, used to place
// probe points. Label bounds are included so probes can vary y as well.
struct Box {
  std::vector<double> x_lo;
  std::vector<double> x_hi;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

// A law P of Z = (X, Y) known in closed form, so the generalization error of
// any fitted predictor can be computed (exactly for discrete laws). Every
// drawn example also gets an independent tie-break uniform u.
class SyntheticDistribution {
 public:
  enum class Kind { kDiscreteJoint, kGaussianRegression, kTwoClassGaussian };
  enum class XLaw { kUniform, kNormal };

  // Probabilities must be positive and sum to 1 within 1e-12.
  static SyntheticDistribution discrete(std::vector<Atom> atoms);

  // y = intercept + slope . x + sigma N(0,1), with each coordinate of x
  // either uniform on [lo, hi] or normal(lo, hi) (mean lo, sd hi).
  static SyntheticDistribution gaussian_regression(std::vector<double> slope,
                                                   double intercept,
                                                   double sigma, XLaw x_law,
                                                   double lo, double hi);

  // Y ~ Bernoulli(prior_one); X | Y=c ~ N(mean_c, sigma^2 I).
  static SyntheticDistribution two_class_gaussian(std::vector<double> mean0,
                                                  std::vector<double> mean1,
                                                  double sigma,
                                                  double prior_one);

  Kind kind() const noexcept { return kind_; }
  bool is_discrete() const noexcept { return kind_ == Kind::kDiscreteJoint; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::span<const double> slope() const noexcept { return slope_; }
  double intercept() const noexcept { return intercept_; }
  double sigma() const noexcept { return sigma_; }
  XLaw x_law() const noexcept { return x_law_; }
  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  std::span<const double> mean0() const noexcept { return mean0_; }
  std::span<const double> mean1() const noexcept { return mean1_; }
  double prior_one() const noexcept { return prior_one_; }

  // Distinct label values when Y is finitely supported, else empty.
  std::vector<double> label_values() const;

  Box box() const;

  Example draw(Rng& rng) const;
  LearningSet sample(std::size_t n, Rng& rng) const;

  // `count` quasi-uniform points over box() (Halton in x, y and u); labels
  // are snapped to label_values() when Y is finitely supported.
  std::vector<Example> probe_grid(std::size_t count) const;

 private:
  SyntheticDistribution() = default;

  Kind kind_ = Kind::kDiscreteJoint;
  std::size_t dim_ = 0;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::vector<double> slope_;
  double intercept_ = 0.0;
  double sigma_ = 0.0;
  XLaw x_law_ = XLaw::kUniform;
  double x_lo_ = 0.0;
  double x_hi_ = 1.0;
  std::vector<double> mean0_;
  std::vector<double> mean1_;
  double prior_one_ = 0.5;
};

std::string_view to_string(SyntheticDistribution::Kind kind) noexcept;

}  // namespace stabcv

#endif  // STABCV_LAWS_HPP_
