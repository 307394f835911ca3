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

// The three error functionals of a learning rule on a sample D_n:
//
//   cv_estimate     sum over the scheme's support of prob * test-mean loss of
//                   the rule refit on the training rows
//   resub_estimate  training-set mean loss of the full-sample fit
//   oracle_risk     E_Z loss of a fitted predictor under a known law

#ifndef STABCV_ESTIMATION_HPP_
#define STABCV_ESTIMATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "stabcv/data.hpp"
#include "stabcv/laws.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/predictor.hpp"
#include "stabcv/resampling.hpp"

namespace stabcv {

struct CvOptions {
  // Use Learner::held_out_predictions when the rule has a closed form.
  bool closed_form = true;
  std::size_t workers = 1;  // concurrent fold refits
};

// Errors: InvalidArgument if scheme.n() != data.size(); a failure while
// fitting or evaluating a fold is rethrown as FoldError naming the fold.
double cv_estimate(const Learner& learner, const LearningSet& data,
                   const ResamplingScheme& scheme,
                   const CvOptions& options = {});

// cv_estimate for several schemes on the same data, sharing one
// closed-form factorization when there is one.
std::vector<double> cv_estimates(const Learner& learner,
                                 const LearningSet& data,
                                 std::span<const ResamplingScheme* const> schemes,
                                 const CvOptions& options = {});

double resub_estimate(const Learner& learner, const LearningSet& data);
double resub_estimate(const Predictor& fitted, const LearningSet& data);

struct RiskEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact evaluation
  bool exact = false;
};

inline constexpr std::size_t kDefaultOracleDraws = 100000;

// Exact for discrete laws (the tie-break uniform of the query is integrated
// out as well), Monte Carlo with `mc_draws` fresh draws otherwise. Throws
// InvalidArgument when a continuous law comes without mc_draws.
RiskEstimate oracle_risk(const Predictor& predictor,
                         const SyntheticDistribution& law,
                         std::optional<std::size_t> mc_draws = std::nullopt,
                         std::uint64_t seed = 0);

struct ErrorTriple {
  double r_cv = 0.0;
  double r_tilde = 0.0;
  double r_tilde_stderr = 0.0;
  double r_hat = 0.0;
  double gap = 0.0;  // |r_cv - r_tilde|
};

ErrorTriple error_triple(const Learner& learner, const LearningSet& data,
                         const ResamplingScheme& scheme,
                         const SyntheticDistribution& law,
                         std::optional<std::size_t> mc_draws = std::nullopt,
                         std::uint64_t seed = 0,
                         const CvOptions& options = {});

}  // namespace stabcv

#endif  // STABCV_ESTIMATION_HPP_
