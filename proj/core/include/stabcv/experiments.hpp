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

// Monte Carlo harness. Each replicate r draws D_n from the law on stream
// (seed, r, kData), computes |R_cv - R_tilde| and stores it in slot r, so
// reports depend on the seed and configuration only, never on the number of
// workers.

#ifndef STABCV_EXPERIMENTS_HPP_
#define STABCV_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabcv/bounds.hpp"
#include "stabcv/laws.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/resampling.hpp"
#include "stabcv/stability.hpp"
#include "stabcv/stats.hpp"

namespace stabcv {

enum class BoundKind {
  kCvStrong,          // generic tail, multiplier 1
  kCvWeak,            // generic tail, multiplier 1
  kStrong,            // generic tail, multiplier kappa(n)
  kWeak,              // generic tail, multiplier kappa(n)
  kCvStrongUniform,   // uniform_stability_tail_strong
  kCvWeakUniform,     // uniform_stability_tail_weak
  kHoldout,           // generic tail, multiplier 1, hold-out scheme only
  kHoldoutUniform,    // holdout_uniform_tail
  kVc,                // vc_baseline
};

std::string_view to_string(BoundKind kind) noexcept;
BoundKind bound_kind_from_string(std::string_view name);

// Throws InvalidArgument when the profile cannot serve as the premise of the
// bound (e.g. a uniform bound with a d_1 profile, or a strong bound with a
// weak profile) or the scheme does not fit (hold-out bounds).
void check_premise(BoundKind bound, const StabilityProfile& profile,
                   const ResamplingScheme& scheme);

struct BoundInputs {
  double delta_loo = 0.0;       // delta_{n,1/n}: hold-out and weak delta'
  double delta_loo_next = 0.0;  // delta_{n+1,1/(n+1)}: strong delta'
  std::optional<double> alpha_prime;
  double vc_dim = 1.0;
  VcOptions vc;
  HoldoutOptions holdout;
};

TailBound evaluate_bound(BoundKind kind, const StabilityProfile& profile,
                         const ResamplingScheme& scheme, double eps,
                         const BoundInputs& inputs = {});

enum class Verdict { kPass, kVacuousPass, kFail };
std::string_view to_string(Verdict verdict) noexcept;

struct ConcentrationRow {
  double eps = 0.0;
  double shift = 0.0;
  std::size_t exceedances = 0;  // replicates with gap >= eps + shift
  WilsonInterval freq;
  TailBound bound;
  Verdict verdict = Verdict::kPass;
  // freq.point <= bound.clipped + slack_half_widths Wilson half-widths
  // (computed at z = 1).
  bool within_slack = true;
};

struct ConcentrationOptions {
  BoundKind bound = BoundKind::kCvStrong;
  BoundInputs bound_inputs;
  std::size_t replicates = 1000;
  std::vector<double> eps_grid;  // empty: 20 log-spaced points on [0.01, 1]
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t oracle_draws = 100000;  // continuous laws only
  bool closed_form = true;
  double verdict_z = 3.0;  // FAIL iff the Wilson lower limit exceeds clipped
  double slack_half_widths = 3.0;
};

struct ConcentrationReport {
  std::size_t n = 0;
  double p = 0.0;
  std::string scheme;
  std::string learner;
  BoundKind bound = BoundKind::kCvStrong;
  StabilityProfile profile;
  // Estimated premises turn the run into a consistency audit.
  bool consistency_audit = false;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<double> gaps;  // per replicate
  std::vector<ConcentrationRow> rows;
  MeanEstimate mean_gap;
  double l1_bound = 0.0;  // weak-general form at the profile's lambda, delta
  std::size_t fail_count = 0;
};

ConcentrationReport run_concentration(const SyntheticDistribution& law,
                                      const Learner& learner,
                                      const ResamplingScheme& scheme,
                                      const StabilityProfile& profile,
                                      const ConcentrationOptions& options);

struct SplitRow {
  double p = 0.0;
  std::size_t nu = 0;
  std::string scheme;
  MeanEstimate gap;
  double l1_bound = 0.0;
};

struct SplitOptions {
  std::vector<double> p_grid;
  // Scheme used at each p; nullopt picks leave-one-out for nu = 1, k-fold
  // when nu divides n and Monte Carlo leave-nu-out otherwise.
  std::optional<SchemeKind> scheme_kind;
  std::size_t mc_draws = 200;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t oracle_draws = 100000;
  bool closed_form = true;
  // Premise used for the theoretical curve and p*.
  L1Kind theory = L1Kind::kWeakGeneral;
  double lambda = 1.0;
  double delta = 0.0;
};

struct SplitReport {
  std::size_t n = 0;
  std::string learner;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<SplitRow> rows;
  std::size_t argmin = 0;  // index into rows
  SplitRule theory;
  std::string shape;  // u-shaped, increasing, decreasing or flat
};

// Throws InvalidArgument when some n p is not an integer (within 1e-9).
SplitReport run_split_sweep(const SyntheticDistribution& law,
                            const Learner& learner, std::size_t n,
                            const SplitOptions& options);

struct AuditReport {
  ProfileEstimate estimate;
  // Per-removal certificate on the distance scale, when one is known for
  // the learner (kernel ridge with d_inf).
  std::optional<double> certificate;
  std::size_t certificate_violations = 0;
  bool certificate_holds = true;
};

// estimate_profile plus the comparison with the learner's certificate. When
// a certificate exists it replaces options.distance_ceiling.
AuditReport run_stability_audit(const SyntheticDistribution& law,
                                const Learner& learner,
                                const ResamplingScheme& scheme,
                                const ProfileOptions& options);

// sup_x k(x, x) over the law's box, i.e. kappa^2 for the certificate.
double kernel_bound_squared(const Kernel& kernel,
                            const SyntheticDistribution& law);

}  // namespace stabcv

#endif  // STABCV_EXPERIMENTS_HPP_
