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

// Train/test masks and the resampling schemes built from them.
//
// A cross-validation procedure is a probability law over training masks. The
// scheme stores that law extensionally as a finite support with masses, so
// leave-one-out, k-fold, hold-out and leave-nu-out (exact or Monte Carlo) all
// share one representation and one estimator.

#ifndef STABCV_RESAMPLING_HPP_
#define STABCV_RESAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace stabcv {

// A {0,1} mask of length n with at least one 1 (1 = training row).
class BinaryVector {
 public:
  explicit BinaryVector(std::vector<std::uint8_t> bits);

  static BinaryVector ones(std::size_t n);
  // Training mask with zeros exactly at `test_indices`.
  static BinaryVector without(std::size_t n,
                              std::span<const std::size_t> test_indices);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept { return count_; }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  // Complement 1_n - v. Throws if v is all ones (the complement would be
  // empty and therefore not a binary vector).
  BinaryVector complement() const;

  std::vector<std::size_t> indices() const;

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

// Per-row masses of the uniform measure on the rows a mask selects.
class WeightedEmpiricalMeasure {
 public:
  explicit WeightedEmpiricalMeasure(const BinaryVector& v);

  std::span<const double> masses() const noexcept { return masses_; }

 private:
  std::vector<double> masses_;
};

// Sum over rows of |mass_u(i) - mass_v(i)|: the L1 distance between the two
// induced measures, so a leave-one-out mask sits at 2/n from the full sample.
// Evaluated in integer arithmetic with a single final division, which makes
// the result the correctly rounded value of the exact rational.
double total_variation(const BinaryVector& u, const BinaryVector& v);

enum class SchemeKind {
  kLeaveOneOut,
  kKFold,
  kHoldOut,
  kLeaveNuOut,
  kLeaveNuOutMonteCarlo,
};

std::string_view to_string(SchemeKind kind) noexcept;
SchemeKind scheme_kind_from_string(std::string_view name);

struct SchemeParams {
  std::size_t k = 0;                      // k-fold
  std::size_t nu = 0;                     // leave-nu-out (exact and MC)
  std::size_t draws = 0;                  // leave-nu-out Monte Carlo
  std::vector<std::uint8_t> holdout_mask; // hold-out training mask
  double support_cap = 1e6;               // max exact support size
};

struct WeightedMask {
  BinaryVector train;
  double probability;
};

struct InclusionProfile {
  std::vector<double> train_probability;  // Pr(row i in training set)
  bool symmetric = false;                 // all equal within 1e-12
};

class ResamplingScheme {
 public:
  std::size_t n() const noexcept { return n_; }
  // Test fraction p: every support mask has exactly n (1 - p) ones.
  double p() const noexcept { return p_; }
  std::size_t train_size() const noexcept { return train_size_; }
  std::size_t test_size() const noexcept { return n_ - train_size_; }
  SchemeKind kind() const noexcept { return kind_; }
  const SchemeParams& params() const noexcept { return params_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool monte_carlo() const noexcept {
    return kind_ == SchemeKind::kLeaveNuOutMonteCarlo;
  }

  const std::vector<WeightedMask>& support() const noexcept {
    return support_;
  }
  // kappa(n): number of training vectors in the support.
  std::size_t kappa() const noexcept { return support_.size(); }

  friend ResamplingScheme build_scheme(std::size_t n, SchemeKind kind,
                                       const SchemeParams& params,
                                       std::uint64_t seed);

 private:
  ResamplingScheme() = default;

  std::size_t n_ = 0;
  double p_ = 0.0;
  std::size_t train_size_ = 0;
  SchemeKind kind_ = SchemeKind::kLeaveOneOut;
  SchemeParams params_;
  std::uint64_t seed_ = 0;
  std::vector<WeightedMask> support_;
};

// Builds the law of the training vector. Errors (InvalidArgument): n < 2,
// k not dividing n, nu >= n, a hold-out mask of the wrong length or with no
// test row; SupportTooLarge when C(n, nu) exceeds params.support_cap.
ResamplingScheme build_scheme(std::size_t n, SchemeKind kind,
                              const SchemeParams& params = {},
                              std::uint64_t seed = 0);

InclusionProfile scheme_symmetry_check(const ResamplingScheme& scheme);

// Nearest test fraction nu / n with 1 <= nu <= n - 1 (ties round up).
double feasible_test_fraction(double p, std::size_t n);

// JSON: {n, p, kind, params, seed, support?: [[bits...], prob]}. The support
// is omitted for Monte Carlo schemes whose draw count exceeds the cap; it is
// regenerated from the seed on load.
nlohmann::json scheme_to_json(const ResamplingScheme& scheme);
ResamplingScheme scheme_from_json(const nlohmann::json& j);

}  // namespace stabcv

#endif  // STABCV_RESAMPLING_HPP_
