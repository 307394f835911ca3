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

// Distances between fitted predictors and stability profiles.
//
// A learning rule is (lambda, delta, d) stable with exponent alpha when
//
//   Pr( d(psi_U, psi_n) >= lambda * TV(U, 1_n)^alpha ) <= delta
//
// for a training mask U (weak), for U and a sample whose last point is
// arbitrary (strong), or uniformly over the scheme's support (cv-weak,
// cv-strong). estimate_profile measures the left-hand side by simulation;
// the certificate_* functions return the closed-form guarantees.

#ifndef STABCV_STABILITY_HPP_
#define STABCV_STABILITY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stabcv/data.hpp"
#include "stabcv/laws.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/predictor.hpp"
#include "stabcv/resampling.hpp"
#include "stabcv/stats.hpp"

namespace stabcv {

enum class StabilityKind { kWeak, kStrong, kCvWeak, kCvStrong, kSure };
enum class Distance { kSup, kL1, kExpectation };  // d_inf, d_1, d_e
enum class Provenance { kCertified, kEstimated };

std::string_view to_string(StabilityKind kind) noexcept;
std::string_view to_string(Distance distance) noexcept;
std::string_view to_string(Provenance provenance) noexcept;
StabilityKind stability_kind_from_string(std::string_view name);
Distance distance_from_string(std::string_view name);

bool is_cv_kind(StabilityKind kind) noexcept;
bool is_strong_kind(StabilityKind kind) noexcept;

// lambda is on the ratio scale: the event is d >= lambda * TV^alpha.
struct StabilityProfile {
  StabilityKind kind = StabilityKind::kWeak;
  Distance distance = Distance::kSup;
  double alpha = 1.0;
  double lambda = 0.0;
  double delta = 0.0;
  Provenance provenance = Provenance::kEstimated;
  std::size_t reps = 0;  // estimated profiles only
  std::uint64_t seed = 0;

  bool sure() const noexcept { return delta == 0.0; }
};

// Throws InvalidArgument unless alpha is in (0, 1], lambda >= 0, delta is in
// [0, 1] and a kSure profile has delta == 0.
void validate(const StabilityProfile& profile);

// Where a distance is evaluated. Weighted points with the query tie-break
// either taken from each point (kStored) or integrated over [0, 1]
// (kIntegrate), the latter giving exact values for discrete laws.
class Reference {
 public:
  enum class TieBreak { kStored, kIntegrate };

  // Atoms of a discrete law: exact expectations.
  static Reference discrete(const SyntheticDistribution& law);
  // Equal-weight Monte Carlo sample: expectations carry a standard error.
  static Reference sample(std::vector<Example> points);
  // Probe points, equally weighted.
  static Reference probes(std::vector<Example> points,
                          TieBreak tiebreak = TieBreak::kStored);

  // Copy with extra zero-mass points: they enter d_inf but not d_1 or d_e.
  Reference with_extra_probes(std::span<const Example> extra) const;

  std::span<const Example> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  TieBreak tiebreak() const noexcept { return tiebreak_; }
  bool exact() const noexcept { return exact_; }

 private:
  std::vector<Example> points_;
  std::vector<double> weights_;
  TieBreak tiebreak_ = TieBreak::kStored;
  bool exact_ = false;
};

struct DistanceValue {
  double value = 0.0;
  double std_error = 0.0;
};

// d_inf = sup |psi1 - psi2| over the reference points, d_1 = E|psi1 - psi2|,
// d_e = |E(psi1 - psi2)|. Throws InvalidArgument on an empty reference.
DistanceValue dist_between(const Predictor& p1, const Predictor& p2,
                           Distance which, const Reference& ref);

struct CurvePoint {
  double lambda = 0.0;
  double delta = 0.0;      // fraction of replicates with ratio >= lambda
  double std_error = 0.0;  // binomial
};

struct LambdaAtDelta {
  double delta = 0.0;
  double lambda = 0.0;      // empirical (1 - delta)-quantile of the ratios
  WilsonInterval achieved;  // fraction of ratios > lambda, with interval
};

struct ProfileOptions {
  StabilityKind kind = StabilityKind::kWeak;
  Distance distance = Distance::kSup;
  double alpha = 1.0;
  std::size_t reps = 1000;
  std::uint64_t seed = 0;

  // Strong kinds: candidate values for the arbitrary last point, extended
  // with `fresh_probes` draws from the law in every replicate.
  std::vector<Example> z_probes;
  std::size_t fresh_probes = 8;

  // d_inf evaluation: this many quasi-uniform points over the law's box for
  // continuous laws (discrete laws use their atoms).
  std::size_t probe_grid = 512;
  // d_1 / d_e on continuous laws: Monte Carlo evaluation sample size.
  std::size_t eval_sample = 2000;

  std::size_t support_cap = 10000;  // cv kinds, masks per replicate
  std::vector<double> lambda_grid;  // empty: 41 points over [0, 1.25 max]
  std::vector<double> delta_targets = {0.01, 0.05, 0.1};
  double wilson_z = 3.0;
  std::size_t workers = 1;

  // Count pairs whose distance exceeds this value (certificate checks).
  std::optional<double> distance_ceiling;
};

struct ProfileEstimate {
  // lambda/delta taken at the first delta target.
  StabilityProfile profile;
  std::vector<double> ratios;  // one per replicate, in replicate order
  std::vector<CurvePoint> curve;
  std::vector<LambdaAtDelta> lambda_at_delta;
  double max_distance = 0.0;          // largest d(psi_U, psi_n) seen
  std::size_t pairs_evaluated = 0;
  std::size_t ordering_violations = 0;  // pairs with d_e > d_1 or d_1 > d_inf
  std::size_t ceiling_violations = 0;
};

// Errors: reps < 100; scheme.n() mismatch is impossible (the scheme fixes
// n); SupportTooLarge for cv kinds whose support exceeds support_cap;
// InvalidArgument for strong kinds with no z candidates at all.
ProfileEstimate estimate_profile(const Learner& learner,
                                 const ResamplingScheme& scheme,
                                 const SyntheticDistribution& law,
                                 const ProfileOptions& options);

// delta-hat(lambda) for each grid value from a set of ratios.
std::vector<CurvePoint> survival_curve(std::span<const double> ratios,
                                       std::span<const double> lambda_grid);

// Kernel ridge rule with loss bounded by M and sup_x k(x, x) <= kappa^2:
// removing one of n points moves the loss by at most 4 M kappa^2 / (n
// lambda_reg) anywhere. The returned profile is sure (delta = 0), d_inf,
// alpha = 1, with `lambda` holding that per-removal bound.
StabilityProfile certificate_regnet(double loss_bound, double kappa,
                                    std::size_t n, double lambda_reg);

struct KnnTail {
  double raw = 0.0;
  bool vacuous = false;  // raw >= 1
};

// 6 exp(-(n - 1) eps^3 / (54 k (gamma_d + 2))) with gamma_d = 3^d - 1.
KnnTail certificate_knn_tail(std::size_t n, std::size_t k, std::size_t d,
                             double eps);

}  // namespace stabcv

#endif  // STABCV_STABILITY_HPP_
