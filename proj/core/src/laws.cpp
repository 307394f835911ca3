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


#include "stabcv/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stabcv/error.hpp"

namespace stabcv {

namespace {

// Box-Muller on our own uniforms, so draws are identical across standard
// library implementations.
double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

SyntheticDistribution SyntheticDistribution::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw InvalidArgument("discrete law: no atoms");
  SyntheticDistribution law;
  law.kind_ = Kind::kDiscreteJoint;
  law.dim_ = atoms.front().x.size();
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].x.size() != law.dim_) {
      throw InvalidArgument("discrete law: atom " + std::to_string(i) +
                            " has the wrong dimension");
    }
    if (!(atoms[i].prob > 0.0)) {
      throw InvalidArgument("discrete law: atom " + std::to_string(i) +
                            " has nonpositive probability");
    }
    total += atoms[i].prob;
    law.cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("discrete law: probabilities sum to " +
                          std::to_string(total) + ", not 1");
  }
  law.atoms_ = std::move(atoms);
  return law;
}

SyntheticDistribution SyntheticDistribution::gaussian_regression(
    std::vector<double> slope, double intercept, double sigma, XLaw x_law,
    double lo, double hi) {
  if (slope.empty()) throw InvalidArgument("gaussian regression: empty slope");
  if (!(sigma >= 0.0)) {
    throw InvalidArgument("gaussian regression: sigma must be >= 0");
  }
  if (x_law == XLaw::kUniform && !(lo < hi)) {
    throw InvalidArgument("gaussian regression: uniform x needs lo < hi");
  }
  if (x_law == XLaw::kNormal && !(hi > 0.0)) {
    throw InvalidArgument("gaussian regression: normal x needs sd > 0");
  }
  SyntheticDistribution law;
  law.kind_ = Kind::kGaussianRegression;
  law.dim_ = slope.size();
  law.slope_ = std::move(slope);
  law.intercept_ = intercept;
  law.sigma_ = sigma;
  law.x_law_ = x_law;
  law.x_lo_ = lo;
  law.x_hi_ = hi;
  return law;
}

SyntheticDistribution SyntheticDistribution::two_class_gaussian(
    std::vector<double> mean0, std::vector<double> mean1, double sigma,
    double prior_one) {
  if (mean0.empty() || mean0.size() != mean1.size()) {
    throw InvalidArgument("two-class law: means must share a dimension >= 1");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("two-class law: sigma must be > 0");
  if (!(prior_one >= 0.0 && prior_one <= 1.0)) {
    throw InvalidArgument("two-class law: prior outside [0, 1]");
  }
  SyntheticDistribution law;
  law.kind_ = Kind::kTwoClassGaussian;
  law.dim_ = mean0.size();
  law.mean0_ = std::move(mean0);
  law.mean1_ = std::move(mean1);
  law.sigma_ = sigma;
  law.prior_one_ = prior_one;
  return law;
}

std::vector<double> SyntheticDistribution::label_values() const {
  switch (kind_) {
    case Kind::kDiscreteJoint: {
      std::vector<double> ys;
      for (const Atom& a : atoms_) ys.push_back(a.y);
      std::sort(ys.begin(), ys.end());
      ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
      return ys;
    }
    case Kind::kTwoClassGaussian:
      return {0.0, 1.0};
    case Kind::kGaussianRegression:
      break;
  }
  return {};
}

Box SyntheticDistribution::box() const {
  Box b;
  b.x_lo.assign(dim_, 0.0);
  b.x_hi.assign(dim_, 0.0);
  switch (kind_) {
    case Kind::kDiscreteJoint:
      b.x_lo = atoms_.front().x;
      b.x_hi = atoms_.front().x;
      b.y_lo = b.y_hi = atoms_.front().y;
      for (const Atom& a : atoms_) {
        for (std::size_t j = 0; j < dim_; ++j) {
          b.x_lo[j] = std::min(b.x_lo[j], a.x[j]);
          b.x_hi[j] = std::max(b.x_hi[j], a.x[j]);
        }
        b.y_lo = std::min(b.y_lo, a.y);
        b.y_hi = std::max(b.y_hi, a.y);
      }
      break;
    case Kind::kGaussianRegression: {
      const double lo = x_law_ == XLaw::kUniform ? x_lo_ : x_lo_ - 4.0 * x_hi_;
      const double hi = x_law_ == XLaw::kUniform ? x_hi_ : x_lo_ + 4.0 * x_hi_;
      b.x_lo.assign(dim_, lo);
      b.x_hi.assign(dim_, hi);
      b.y_lo = b.y_hi = intercept_;
      for (double s : slope_) {
        b.y_lo += std::min(s * lo, s * hi);
        b.y_hi += std::max(s * lo, s * hi);
      }
      b.y_lo -= 4.0 * sigma_;
      b.y_hi += 4.0 * sigma_;
      break;
    }
    case Kind::kTwoClassGaussian:
      for (std::size_t j = 0; j < dim_; ++j) {
        b.x_lo[j] = std::min(mean0_[j], mean1_[j]) - 4.0 * sigma_;
        b.x_hi[j] = std::max(mean0_[j], mean1_[j]) + 4.0 * sigma_;
      }
      b.y_lo = 0.0;
      b.y_hi = 1.0;
      break;
  }
  return b;
}

Example SyntheticDistribution::draw(Rng& rng) const {
  Example z;
  switch (kind_) {
    case Kind::kDiscreteJoint: {
      const double r = uniform01(rng);
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
      const std::size_t i = std::min<std::size_t>(
          static_cast<std::size_t>(it - cumulative_.begin()),
          atoms_.size() - 1);
      z.x = atoms_[i].x;
      z.y = atoms_[i].y;
      break;
    }
    case Kind::kGaussianRegression: {
      z.x.resize(dim_);
      z.y = intercept_;
      for (std::size_t j = 0; j < dim_; ++j) {
        z.x[j] = x_law_ == XLaw::kUniform
                     ? x_lo_ + (x_hi_ - x_lo_) * uniform01(rng)
                     : x_lo_ + x_hi_ * standard_normal(rng);
        z.y += slope_[j] * z.x[j];
      }
      if (sigma_ > 0.0) z.y += sigma_ * standard_normal(rng);
      break;
    }
    case Kind::kTwoClassGaussian: {
      z.y = uniform01(rng) < prior_one_ ? 1.0 : 0.0;
      const auto& mean = z.y == 1.0 ? mean1_ : mean0_;
      z.x.resize(dim_);
      for (std::size_t j = 0; j < dim_; ++j) {
        z.x[j] = mean[j] + sigma_ * standard_normal(rng);
      }
      break;
    }
  }
  z.u = uniform01(rng);
  return z;
}

LearningSet SyntheticDistribution::sample(std::size_t n, Rng& rng) const {
  std::vector<Example> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(draw(rng));
  return LearningSet(std::move(rows));
}

std::vector<Example> SyntheticDistribution::probe_grid(std::size_t count) const {
  const Box b = box();
  const auto labels = label_values();
  const auto points = halton_points(count, dim_ + 2);
  std::vector<Example> out;
  out.reserve(count);
  for (const auto& h : points) {
    Example z;
    z.x.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      z.x[j] = b.x_lo[j] + h[j] * (b.x_hi[j] - b.x_lo[j]);
    }
    const double hy = h[dim_];
    if (labels.empty()) {
      z.y = b.y_lo + hy * (b.y_hi - b.y_lo);
    } else {
      const auto idx = std::min(
          labels.size() - 1,
          static_cast<std::size_t>(hy * static_cast<double>(labels.size())));
      z.y = labels[idx];
    }
    z.u = h[dim_ + 1];
    out.push_back(std::move(z));
  }
  return out;
}

std::string_view to_string(SyntheticDistribution::Kind kind) noexcept {
  switch (kind) {
    case SyntheticDistribution::Kind::kDiscreteJoint:
      return "discrete";
    case SyntheticDistribution::Kind::kGaussianRegression:
      return "gaussian-regression";
    case SyntheticDistribution::Kind::kTwoClassGaussian:
      return "two-class-gaussian";
  }
  return "unknown";
}

}  // namespace stabcv
