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


#include "stabcv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "stabcv/error.hpp"
#include "stabcv/estimation.hpp"
#include "stabcv/parallel.hpp"
#include "stabcv/random.hpp"

namespace stabcv {

namespace {

constexpr BoundKind kAllBounds[] = {
    BoundKind::kCvStrong,        BoundKind::kCvWeak,
    BoundKind::kStrong,          BoundKind::kWeak,
    BoundKind::kCvStrongUniform, BoundKind::kCvWeakUniform,
    BoundKind::kHoldout,         BoundKind::kHoldoutUniform,
    BoundKind::kVc,
};

bool is_uniform_bound(BoundKind kind) {
  return kind == BoundKind::kCvStrongUniform ||
         kind == BoundKind::kCvWeakUniform ||
         kind == BoundKind::kHoldoutUniform;
}

// Profile kinds that imply `needed`: sure implies everything, cv-strong
// implies strong and cv-weak, and every kind implies weak.
bool implies(StabilityKind have, StabilityKind needed) {
  if (have == needed || have == StabilityKind::kSure) return true;
  switch (needed) {
    case StabilityKind::kWeak: return true;
    case StabilityKind::kStrong: return have == StabilityKind::kCvStrong;
    case StabilityKind::kCvWeak: return have == StabilityKind::kCvStrong;
    case StabilityKind::kCvStrong:
    case StabilityKind::kSure: return false;
  }
  return false;
}

StabilityKind required_kind(BoundKind kind) {
  switch (kind) {
    case BoundKind::kCvStrong:
    case BoundKind::kCvStrongUniform: return StabilityKind::kCvStrong;
    case BoundKind::kCvWeak:
    case BoundKind::kCvWeakUniform: return StabilityKind::kCvWeak;
    case BoundKind::kStrong: return StabilityKind::kStrong;
    case BoundKind::kWeak:
    case BoundKind::kHoldout:
    case BoundKind::kHoldoutUniform:
    case BoundKind::kVc: return StabilityKind::kWeak;
  }
  return StabilityKind::kWeak;
}

}  // namespace

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::kCvStrong: return "cv-strong";
    case BoundKind::kCvWeak: return "cv-weak";
    case BoundKind::kStrong: return "strong";
    case BoundKind::kWeak: return "weak";
    case BoundKind::kCvStrongUniform: return "cv-strong-uniform";
    case BoundKind::kCvWeakUniform: return "cv-weak-uniform";
    case BoundKind::kHoldout: return "holdout";
    case BoundKind::kHoldoutUniform: return "holdout-uniform";
    case BoundKind::kVc: return "vc";
  }
  return "cv-strong";
}

BoundKind bound_kind_from_string(std::string_view name) {
  for (BoundKind k : kAllBounds) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown bound '" + std::string(name) + "'");
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::kPass: return "PASS";
    case Verdict::kVacuousPass: return "VACUOUS-PASS";
    case Verdict::kFail: return "FAIL";
  }
  return "PASS";
}

void check_premise(BoundKind bound, const StabilityProfile& profile,
                   const ResamplingScheme& scheme) {
  validate(profile);
  if (bound == BoundKind::kVc) return;
  if (is_uniform_bound(bound) && profile.distance != Distance::kSup) {
    throw InvalidArgument(std::string(to_string(bound)) +
                          " bound needs a d_inf profile, got " +
                          std::string(to_string(profile.distance)));
  }
  const StabilityKind needed = required_kind(bound);
  if (!implies(profile.kind, needed)) {
    throw InvalidArgument(std::string(to_string(bound)) + " bound needs a " +
                          std::string(to_string(needed)) + " profile, got " +
                          std::string(to_string(profile.kind)));
  }
  if ((bound == BoundKind::kHoldout || bound == BoundKind::kHoldoutUniform) &&
      scheme.kind() != SchemeKind::kHoldOut) {
    throw InvalidArgument(std::string(to_string(bound)) +
                          " bound needs a hold-out scheme");
  }
}

TailBound evaluate_bound(BoundKind kind, const StabilityProfile& profile,
                         const ResamplingScheme& scheme, double eps,
                         const BoundInputs& inputs) {
  const std::size_t n = scheme.n();
  const double p = scheme.p();
  const double lambda = profile.lambda;
  const double alpha = profile.alpha;
  const double delta = profile.delta;
  switch (kind) {
    case BoundKind::kCvStrong:
    case BoundKind::kCvWeak:
    case BoundKind::kHoldout:
      return generic_stability_tail(n, p, eps, lambda, alpha, delta, 1.0);
    case BoundKind::kStrong:
    case BoundKind::kWeak:
      return generic_stability_tail(n, p, eps, lambda, alpha, delta,
                                    static_cast<double>(scheme.kappa()));
    case BoundKind::kCvStrongUniform:
      return uniform_stability_tail_strong(n, p, eps, lambda, alpha, delta,
                                           inputs.delta_loo_next,
                                           inputs.alpha_prime);
    case BoundKind::kCvWeakUniform:
      return uniform_stability_tail_weak(n, p, eps, lambda, alpha, delta,
                                         2.0 * inputs.delta_loo + delta);
    case BoundKind::kHoldoutUniform:
      return holdout_uniform_tail(n, p, eps, lambda, alpha, delta,
                                  inputs.delta_loo, inputs.holdout);
    case BoundKind::kVc:
      return vc_baseline(n, p, eps, inputs.vc_dim, inputs.vc);
  }
  throw InvalidArgument("unknown bound kind");
}

ConcentrationReport run_concentration(const SyntheticDistribution& law,
                                      const Learner& learner,
                                      const ResamplingScheme& scheme,
                                      const StabilityProfile& profile,
                                      const ConcentrationOptions& options) {
  check_premise(options.bound, profile, scheme);
  if (options.replicates == 0) {
    throw InvalidArgument("replicates must be positive");
  }
  std::vector<double> eps_grid = options.eps_grid;
  if (eps_grid.empty()) eps_grid = logspace(0.01, 1.0, 20);
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw InvalidArgument("eps values must be positive");
  }

  const std::size_t n = scheme.n();
  const std::optional<std::size_t> draws =
      law.is_discrete() ? std::nullopt
                        : std::optional<std::size_t>(options.oracle_draws);
  const CvOptions cv{options.closed_form, 1};

  ConcentrationReport report;
  report.n = n;
  report.p = scheme.p();
  report.scheme = std::string(to_string(scheme.kind()));
  report.learner = std::string(learner.name());
  report.bound = options.bound;
  report.profile = profile;
  report.consistency_audit = profile.provenance == Provenance::kEstimated;
  report.replicates = options.replicates;
  report.seed = options.seed;
  report.gaps.assign(options.replicates, 0.0);

  parallel_for(options.replicates, options.workers, [&](std::size_t r) {
    Rng rng = make_stream(options.seed, r, StreamTag::kData);
    const LearningSet data = law.sample(n, rng);
    report.gaps[r] = error_triple(learner, data, scheme, law, draws,
                                  stream_seed(options.seed, r), cv)
                         .gap;
  });

  report.mean_gap = mean_with_stderr(report.gaps);
  report.l1_bound = l1_bound(L1Kind::kWeakGeneral, n, report.p, profile.lambda,
                             profile.delta);

  for (double eps : eps_grid) {
    ConcentrationRow row;
    row.eps = eps;
    row.bound = evaluate_bound(options.bound, profile, scheme, eps,
                               options.bound_inputs);
    row.shift = row.bound.threshold_shift;
    const double threshold = eps + row.shift;
    row.exceedances = static_cast<std::size_t>(
        std::count_if(report.gaps.begin(), report.gaps.end(),
                      [&](double g) { return g >= threshold; }));
    row.freq = wilson_interval(row.exceedances, options.replicates,
                               options.verdict_z);
    if (row.freq.lower > row.bound.clipped) {
      row.verdict = Verdict::kFail;
      ++report.fail_count;
    } else {
      row.verdict = row.bound.vacuous ? Verdict::kVacuousPass : Verdict::kPass;
    }
    const double hw =
        wilson_interval(row.exceedances, options.replicates, 1.0).half_width();
    row.within_slack =
        row.freq.point <= row.bound.clipped + options.slack_half_widths * hw;
    report.rows.push_back(row);
  }
  return report;
}

namespace {

ResamplingScheme split_scheme(std::size_t n, std::size_t nu,
                              const SplitOptions& options,
                              std::uint64_t seed) {
  SchemeKind kind;
  if (options.scheme_kind) {
    kind = *options.scheme_kind;
  } else if (nu == 1) {
    kind = SchemeKind::kLeaveOneOut;
  } else if (n % nu == 0) {
    kind = SchemeKind::kKFold;
  } else {
    kind = SchemeKind::kLeaveNuOutMonteCarlo;
  }
  SchemeParams params;
  switch (kind) {
    case SchemeKind::kLeaveOneOut:
      if (nu != 1) {
        throw InvalidArgument("leave-one-out needs n p = 1");
      }
      break;
    case SchemeKind::kKFold:
      if (n % nu != 0) {
        throw InvalidArgument("k-fold needs n p to divide n");
      }
      params.k = n / nu;
      break;
    case SchemeKind::kHoldOut:
      params.holdout_mask.assign(n, 1);
      std::fill(params.holdout_mask.end() - static_cast<std::ptrdiff_t>(nu),
                params.holdout_mask.end(), 0);
      break;
    case SchemeKind::kLeaveNuOut:
      params.nu = nu;
      break;
    case SchemeKind::kLeaveNuOutMonteCarlo:
      params.nu = nu;
      params.draws = options.mc_draws;
      break;
  }
  return build_scheme(n, kind, params, seed);
}

std::string curve_shape(std::span<const SplitRow> rows, std::size_t argmin) {
  double lo = rows[argmin].gap.mean;
  double hi = lo;
  double noise = 0.0;
  for (const SplitRow& r : rows) {
    hi = std::max(hi, r.gap.mean);
    noise = std::max(noise, r.gap.std_error);
  }
  if (hi - lo <= 2.0 * noise) return "flat";
  if (argmin == 0) return "increasing";
  if (argmin + 1 == rows.size()) return "decreasing";
  return "u-shaped";
}

}  // namespace

SplitReport run_split_sweep(const SyntheticDistribution& law,
                            const Learner& learner, std::size_t n,
                            const SplitOptions& options) {
  if (n < 2) throw InvalidArgument("split sweep needs n >= 2");
  if (options.p_grid.empty()) throw InvalidArgument("empty p grid");
  if (options.replicates == 0) {
    throw InvalidArgument("replicates must be positive");
  }

  std::vector<double> grid = options.p_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<ResamplingScheme> schemes;
  std::vector<std::size_t> nus;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double np = static_cast<double>(n) * grid[i];
    const double nu_real = std::round(np);
    if (std::abs(np - nu_real) > 1e-9 || nu_real < 1.0 ||
        nu_real > static_cast<double>(n - 1)) {
      throw InvalidArgument("n p must be an integer in [1, n - 1], got n p = " +
                            std::to_string(np));
    }
    const auto nu = static_cast<std::size_t>(nu_real);
    nus.push_back(nu);
    schemes.push_back(
        split_scheme(n, nu, options, stream_seed(options.seed, i)));
  }
  std::vector<const ResamplingScheme*> scheme_ptrs;
  for (const auto& s : schemes) scheme_ptrs.push_back(&s);

  const std::optional<std::size_t> draws =
      law.is_discrete() ? std::nullopt
                        : std::optional<std::size_t>(options.oracle_draws);
  const CvOptions cv{options.closed_form, 1};

  // gaps[row * replicates + r]
  std::vector<double> gaps(grid.size() * options.replicates);
  parallel_for(options.replicates, options.workers, [&](std::size_t r) {
    Rng rng = make_stream(options.seed, r, StreamTag::kData);
    const LearningSet data = law.sample(n, rng);
    const std::vector<double> cv_values =
        cv_estimates(learner, data, scheme_ptrs, cv);
    const Predictor full = learner.fit(data);
    const double r_tilde =
        oracle_risk(full, law, draws, stream_seed(options.seed, r)).value;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      gaps[i * options.replicates + r] = std::abs(cv_values[i] - r_tilde);
    }
  });

  SplitReport report;
  report.n = n;
  report.learner = std::string(learner.name());
  report.replicates = options.replicates;
  report.seed = options.seed;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SplitRow row;
    row.p = grid[i];
    row.nu = nus[i];
    row.scheme = std::string(to_string(schemes[i].kind()));
    row.gap = mean_with_stderr(std::span<const double>(
        gaps.data() + i * options.replicates, options.replicates));
    row.l1_bound =
        l1_bound(options.theory, n, grid[i], options.lambda, options.delta);
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].gap.mean < report.rows[report.argmin].gap.mean) {
      report.argmin = i;
    }
  }
  report.theory = optimal_split(options.theory, n, options.lambda);
  report.shape = curve_shape(report.rows, report.argmin);
  return report;
}

double kernel_bound_squared(const Kernel& kernel,
                            const SyntheticDistribution& law) {
  if (kernel.kind == Kernel::Kind::kGaussian) return 1.0;
  const Box box = law.box();
  double s = 1.0;
  for (std::size_t j = 0; j < box.x_lo.size(); ++j) {
    const double m = std::max(std::abs(box.x_lo[j]), std::abs(box.x_hi[j]));
    s += m * m;
  }
  return s;
}

AuditReport run_stability_audit(const SyntheticDistribution& law,
                                const Learner& learner,
                                const ResamplingScheme& scheme,
                                const ProfileOptions& options) {
  AuditReport report;
  ProfileOptions opts = options;
  const auto* spec = std::get_if<RegnetSpec>(&learner.spec());
  if (spec && learner.loss().type == LossType::kSquaredClipped) {
    const double kappa2 = kernel_bound_squared(spec->kernel, law);
    const double kappa = std::sqrt(kappa2);
    // Removing nu points one at a time from samples of size n, n-1, ...
    double cert = 0.0;
    for (std::size_t j = 0; j < scheme.test_size(); ++j) {
      cert += certificate_regnet(learner.loss().bound, kappa, scheme.n() - j,
                                 spec->lambda_reg)
                  .lambda;
    }
    report.certificate = cert;
    opts.distance_ceiling = cert + 1e-9;
  }
  report.estimate = estimate_profile(learner, scheme, law, opts);
  if (report.certificate) {
    report.certificate_violations = report.estimate.ceiling_violations;
    report.certificate_holds = report.certificate_violations == 0;
  }
  return report;
}

}  // namespace stabcv
