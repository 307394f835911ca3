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
#include <vector>

#include <gtest/gtest.h>

#include "stabcv/error.hpp"
#include "stabcv/experiments.hpp"

namespace stabcv {
namespace {

SyntheticDistribution six_atoms() {
  return SyntheticDistribution::discrete({{{0.0}, 0.2, 0.2},
                                          {{0.0}, 0.8, 0.1},
                                          {{0.5}, 0.2, 0.15},
                                          {{0.5}, 0.8, 0.15},
                                          {{1.0}, 0.2, 0.1},
                                          {{1.0}, 0.8, 0.3}});
}

SyntheticDistribution label_noise_law() {
  return SyntheticDistribution::discrete({{{0.0}, 0.0, 0.35},
                                          {{0.0}, 1.0, 0.15},
                                          {{1.0}, 1.0, 0.3},
                                          {{1.0}, 0.0, 0.2}});
}

Learner regnet() {
  return Learner(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
}

StabilityProfile profile(StabilityKind kind, Distance d, double lambda, double delta) {
  StabilityProfile p;
  p.kind = kind;
  p.distance = d;
  p.lambda = lambda;
  p.delta = delta;
  p.provenance = Provenance::kCertified;
  return p;
}

TEST(BoundNames, RoundTrip) {
  for (auto k : {BoundKind::kCvStrong, BoundKind::kCvWeak, BoundKind::kStrong, BoundKind::kWeak,
                 BoundKind::kCvStrongUniform, BoundKind::kCvWeakUniform, BoundKind::kHoldout,
                 BoundKind::kHoldoutUniform, BoundKind::kVc}) {
    EXPECT_EQ(bound_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(bound_kind_from_string("tight"), InvalidArgument);
  EXPECT_EQ(to_string(Verdict::kVacuousPass), "VACUOUS-PASS");
}

TEST(CheckPremise, Mismatches) {
  const auto loo = build_scheme(10, SchemeKind::kLeaveOneOut);
  SchemeParams hp;
  hp.holdout_mask = {1, 1, 1, 1, 1, 1, 1, 1, 0, 0};
  const auto hold = build_scheme(10, SchemeKind::kHoldOut, hp);
  const auto d1 = profile(StabilityKind::kCvStrong, Distance::kL1, 1.0, 0.0);
  EXPECT_THROW(check_premise(BoundKind::kCvStrongUniform, d1, loo), InvalidArgument);
  EXPECT_NO_THROW(check_premise(BoundKind::kCvStrong, d1, loo));
  const auto weak = profile(StabilityKind::kWeak, Distance::kSup, 1.0, 0.0);
  EXPECT_THROW(check_premise(BoundKind::kStrong, weak, loo), InvalidArgument);
  EXPECT_THROW(check_premise(BoundKind::kCvWeak, weak, loo), InvalidArgument);
  EXPECT_NO_THROW(check_premise(BoundKind::kWeak, weak, loo));
  EXPECT_THROW(check_premise(BoundKind::kHoldout, weak, loo), InvalidArgument);
  EXPECT_NO_THROW(check_premise(BoundKind::kHoldout, weak, hold));
  const auto sure = profile(StabilityKind::kSure, Distance::kSup, 0.4, 0.0);
  for (auto b : {BoundKind::kCvStrong, BoundKind::kCvWeakUniform, BoundKind::kStrong}) {
    EXPECT_NO_THROW(check_premise(b, sure, loo));
  }
  const auto cvs = profile(StabilityKind::kCvStrong, Distance::kSup, 1.0, 0.01);
  EXPECT_NO_THROW(check_premise(BoundKind::kCvWeak, cvs, loo));
  EXPECT_NO_THROW(check_premise(BoundKind::kStrong, cvs, loo));
  EXPECT_NO_THROW(check_premise(BoundKind::kVc, d1, loo));
}

TEST(EvaluateBound, MultiplierForPerVectorKinds) {
  const auto loo = build_scheme(20, SchemeKind::kLeaveOneOut);
  const auto prof = profile(StabilityKind::kCvStrong, Distance::kSup, 0.5, 1e-4);
  const auto cv = evaluate_bound(BoundKind::kCvStrong, prof, loo, 0.2);
  const auto strong = evaluate_bound(BoundKind::kStrong, prof, loo, 0.2);
  EXPECT_NEAR(strong.raw - cv.raw, 19.0 * 1e-4, 1e-15);
  EXPECT_GE(strong.raw, cv.raw);
  EXPECT_NEAR(cv.threshold_shift, 0.5 * 0.1, 1e-15);
  BoundInputs in;
  in.delta_loo = 1e-5;
  const auto weak_u = evaluate_bound(BoundKind::kCvWeakUniform, prof, loo, 0.2, in);
  EXPECT_EQ(weak_u.raw,
            uniform_stability_tail_weak(20, 0.05, 0.2, 0.5, 1.0, 1e-4, 2e-5 + 1e-4).raw);
}

TEST(Concentration, CertifiedRegnetPasses) {
  const std::size_t n = 100;
  const auto prof = certificate_regnet(1.0, 1.0, n, 0.1);
  ConcentrationOptions o;
  o.replicates = 1000;
  o.seed = 2026;
  const auto rep = run_concentration(six_atoms(), regnet(),
                                     build_scheme(n, SchemeKind::kLeaveOneOut), prof, o);
  EXPECT_EQ(rep.fail_count, 0u);
  EXPECT_EQ(rep.rows.size(), 20u);
  EXPECT_FALSE(rep.consistency_audit);
  for (const auto& row : rep.rows) {
    EXPECT_NE(row.verdict, Verdict::kFail);
    EXPECT_TRUE(row.within_slack);
    EXPECT_NEAR(row.shift, 0.4 * 0.02, 1e-15);
  }
  EXPECT_LE(rep.mean_gap.mean, rep.l1_bound);
}

TEST(Concentration, ConstantLearnerWithZeroLambda) {
  const auto prof = profile(StabilityKind::kSure, Distance::kSup, 0.0, 0.0);
  ConcentrationOptions o;
  o.replicates = 1000;
  o.seed = 1;
  SchemeParams kp;
  kp.k = 5;
  const auto rep =
      run_concentration(label_noise_law(), Learner(ConstantSpec{1.0}, LossKind::zero_one()),
                        build_scheme(40, SchemeKind::kKFold, kp), prof, o);
  EXPECT_EQ(rep.fail_count, 0u);
  const double biggest = *std::max_element(rep.gaps.begin(), rep.gaps.end());
  for (const auto& row : rep.rows) {
    if (row.eps > biggest) {
      EXPECT_EQ(row.exceedances, 0u);
    }
  }
}

TEST(Concentration, RowInvariants) {
  const auto prof = profile(StabilityKind::kCvWeak, Distance::kL1, 2.0, 0.05);
  ConcentrationOptions o;
  o.bound = BoundKind::kCvWeak;
  o.replicates = 400;
  o.eps_grid = {0.3, 0.01, 0.05, 0.1, 2.0};
  const auto rep = run_concentration(
      label_noise_law(), Learner(KnnSpec{1, Task::kClassification}, LossKind::zero_one()),
      build_scheme(12, SchemeKind::kLeaveOneOut), prof, o);
  std::vector<std::pair<double, double>> by_eps;
  for (const auto& row : rep.rows) {
    EXPECT_LE(row.freq.lower, row.freq.point);
    EXPECT_GE(row.freq.upper, row.freq.point);
    EXPECT_EQ(row.verdict == Verdict::kFail, row.freq.lower > row.bound.clipped);
    if (row.verdict != Verdict::kFail) {
      EXPECT_EQ(row.verdict == Verdict::kVacuousPass, row.bound.vacuous);
    }
    by_eps.emplace_back(row.eps, row.freq.point);
  }
  std::sort(by_eps.begin(), by_eps.end());
  for (std::size_t i = 1; i < by_eps.size(); ++i) {
    EXPECT_LE(by_eps[i].second, by_eps[i - 1].second);
  }
  EXPECT_EQ(rep.rows.back().exceedances, 0u);
}

TEST(Concentration, FalsePremiseFails) {
  // Sure stability with lambda 0 is false for 50-NN on a noiseless two-atom
  // law when hold-out keeps only one half: the gap is often large.
  const auto law = SyntheticDistribution::discrete({{{0.0}, 0.0, 0.5}, {{1.0}, 1.0, 0.5}});
  SchemeParams hp;
  hp.holdout_mask.assign(100, 0);
  std::fill(hp.holdout_mask.begin(), hp.holdout_mask.begin() + 50, 1);
  const auto prof = profile(StabilityKind::kSure, Distance::kSup, 0.0, 0.0);
  ConcentrationOptions o;
  o.bound = BoundKind::kHoldout;
  o.replicates = 200;
  o.eps_grid = {0.1, 0.2, 0.3};
  const auto rep = run_concentration(
      law, Learner(KnnSpec{50, Task::kClassification}, LossKind::zero_one()),
      build_scheme(100, SchemeKind::kHoldOut, hp), prof, o);
  EXPECT_GT(rep.fail_count, 0u);
}

TEST(Concentration, WorkersDoNotChangeGaps) {
  const auto prof = certificate_regnet(1.0, 1.0, 30, 0.1);
  ConcentrationOptions o;
  o.replicates = 60;
  o.seed = 8;
  const auto s = build_scheme(30, SchemeKind::kLeaveOneOut);
  const auto a = run_concentration(six_atoms(), regnet(), s, prof, o);
  o.workers = 5;
  const auto b = run_concentration(six_atoms(), regnet(), s, prof, o);
  EXPECT_EQ(a.gaps, b.gaps);
}

TEST(Concentration, Errors) {
  const auto d1 = profile(StabilityKind::kCvStrong, Distance::kL1, 1.0, 0.0);
  ConcentrationOptions o;
  o.bound = BoundKind::kCvStrongUniform;
  EXPECT_THROW(run_concentration(six_atoms(), regnet(), build_scheme(10, SchemeKind::kLeaveOneOut),
                                 d1, o),
               InvalidArgument);
  o.bound = BoundKind::kCvStrong;
  o.eps_grid = {0.0};
  EXPECT_THROW(run_concentration(six_atoms(), regnet(), build_scheme(10, SchemeKind::kLeaveOneOut),
                                 d1, o),
               InvalidArgument);
}

TEST(SplitSweep, RegnetPrefersLeaveOneOut) {
  const std::size_t n = 40;
  SplitOptions o;
  o.p_grid = {0.5, 0.025, 0.1, 0.25, 0.1};
  o.replicates = 300;
  o.seed = 4;
  o.theory = L1Kind::kStrongUniform;
  o.lambda = certificate_regnet(1.0, 1.0, n, 0.1).lambda;
  const auto rep = run_split_sweep(six_atoms(), regnet(), n, o);
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_EQ(rep.rows[0].p, 0.025);
  EXPECT_EQ(rep.rows[0].scheme, "loo");
  EXPECT_EQ(rep.rows[1].scheme, "kfold");
  EXPECT_EQ(rep.rows[1].nu, 4u);
  const auto& best = rep.rows[rep.argmin].gap;
  EXPECT_LE(rep.rows[0].gap.mean, best.mean + 3.0 * rep.rows[0].gap.std_error);
  EXPECT_DOUBLE_EQ(rep.theory.p_star, 1.0 / n);
  EXPECT_TRUE(rep.shape == "flat" || rep.shape == "increasing" || rep.shape == "u-shaped" ||
              rep.shape == "decreasing");
}

TEST(SplitSweep, MonteCarloWhenNuDoesNotDivide) {
  SplitOptions o;
  o.p_grid = {0.3};
  o.replicates = 5;
  o.mc_draws = 7;
  const auto rep = run_split_sweep(six_atoms(), regnet(), 10, o);
  EXPECT_EQ(rep.rows[0].scheme, "lnu-mc");
  o.p_grid = {0.15};
  EXPECT_THROW(run_split_sweep(six_atoms(), regnet(), 10, o), InvalidArgument);
  o.p_grid = {1.0};
  EXPECT_THROW(run_split_sweep(six_atoms(), regnet(), 10, o), InvalidArgument);
}

TEST(SplitSweep, WorkersDoNotChangeRows) {
  SplitOptions o;
  o.p_grid = {0.1, 0.5};
  o.replicates = 40;
  o.seed = 12;
  const auto knn = Learner(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  const auto a = run_split_sweep(label_noise_law(), knn, 20, o);
  o.workers = 3;
  const auto b = run_split_sweep(label_noise_law(), knn, 20, o);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].gap.mean, b.rows[i].gap.mean);
    EXPECT_EQ(a.rows[i].gap.std_error, b.rows[i].gap.std_error);
  }
}

TEST(Audit, RegnetCertificateHolds) {
  ProfileOptions o;
  o.reps = 100;
  o.kind = StabilityKind::kCvWeak;
  o.distance_ceiling = 0.0;  // replaced by the certificate
  SchemeParams kp;
  kp.k = 5;
  const auto rep = run_stability_audit(six_atoms(), regnet(),
                                       build_scheme(20, SchemeKind::kKFold, kp), o);
  ASSERT_TRUE(rep.certificate.has_value());
  double want = 0.0;
  for (std::size_t j = 0; j < 4; ++j) want += 4.0 / ((20.0 - j) * 0.1);
  EXPECT_NEAR(*rep.certificate, want, 1e-12);
  EXPECT_TRUE(rep.certificate_holds);
  EXPECT_EQ(rep.certificate_violations, 0u);
  EXPECT_LE(rep.estimate.max_distance, *rep.certificate + 1e-9);
}

TEST(Audit, ConstantLearnerHasZeroLambda) {
  ProfileOptions o;
  o.reps = 100;
  const auto rep = run_stability_audit(label_noise_law(),
                                       Learner(ConstantSpec{0.0}, LossKind::zero_one()),
                                       build_scheme(10, SchemeKind::kLeaveOneOut), o);
  EXPECT_FALSE(rep.certificate.has_value());
  for (const auto& l : rep.estimate.lambda_at_delta) EXPECT_EQ(l.lambda, 0.0);
}

TEST(KernelBound, GaussianAndLinear) {
  EXPECT_EQ(kernel_bound_squared(Kernel::gaussian(3.0), six_atoms()), 1.0);
  const auto law = SyntheticDistribution::discrete({{{-2.0, 0.5}, 0.0, 0.5}, {{1.0, -1.0}, 1.0, 0.5}});
  EXPECT_EQ(kernel_bound_squared(Kernel::linear(), law), 1.0 + 4.0 + 1.0);
}

}  // namespace
}  // namespace stabcv
