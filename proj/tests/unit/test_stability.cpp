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
#include "stabcv/stability.hpp"

namespace stabcv {
namespace {

// Squared-clipped (M = 1) predictor whose loss at a y = 0 point is loss(x).
Predictor loss_shape(std::function<double(double)> loss) {
  return Predictor::from_function(
      1, [loss](std::span<const double> x) { return std::sqrt(loss(x[0])); },
      LossKind::squared_clipped(1.0));
}

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

TEST(Names, RoundTrip) {
  for (auto k : {StabilityKind::kWeak, StabilityKind::kStrong, StabilityKind::kCvWeak,
                 StabilityKind::kCvStrong, StabilityKind::kSure}) {
    EXPECT_EQ(stability_kind_from_string(to_string(k)), k);
  }
  for (auto d : {Distance::kSup, Distance::kL1, Distance::kExpectation}) {
    EXPECT_EQ(distance_from_string(to_string(d)), d);
  }
  EXPECT_EQ(to_string(Distance::kSup), "d_inf");
  EXPECT_THROW(stability_kind_from_string("medium"), InvalidArgument);
  EXPECT_TRUE(is_cv_kind(StabilityKind::kCvWeak));
  EXPECT_FALSE(is_cv_kind(StabilityKind::kStrong));
  EXPECT_TRUE(is_strong_kind(StabilityKind::kCvStrong));
}

TEST(Validate, ProfileInvariants) {
  StabilityProfile p;
  p.lambda = 0.5;
  p.delta = 0.1;
  EXPECT_NO_THROW(validate(p));
  EXPECT_FALSE(p.sure());
  p.alpha = 0.0;
  EXPECT_THROW(validate(p), InvalidArgument);
  p.alpha = 1.0;
  p.kind = StabilityKind::kSure;
  EXPECT_THROW(validate(p), InvalidArgument);
  p.delta = 0.0;
  EXPECT_NO_THROW(validate(p));
  EXPECT_TRUE(p.sure());
  p.lambda = -1.0;
  EXPECT_THROW(validate(p), InvalidArgument);
}

TEST(DistBetween, IdenticalPredictorsAreAtZero) {
  const auto law = six_atoms();
  Rng rng(1);
  const auto p = fit_knn(law.sample(10, rng), 3, Task::kRegression,
                         LossKind::squared_clipped(1.0));
  for (auto d : {Distance::kSup, Distance::kL1, Distance::kExpectation}) {
    EXPECT_EQ(dist_between(p, p, d, Reference::discrete(law)).value, 0.0);
  }
}

TEST(DistBetween, ConstantGap) {
  const auto a = loss_shape([](double) { return 0.2; });
  const auto b = loss_shape([](double) { return 0.7; });
  const auto ref = Reference::probes({{{0.0}, 0.0}, {{0.3}, 0.0}, {{0.9}, 0.0}});
  for (auto d : {Distance::kSup, Distance::kL1, Distance::kExpectation}) {
    EXPECT_NEAR(dist_between(a, b, d, ref).value, 0.5, 1e-15);
  }
}

TEST(DistBetween, OpposingGapsCancelInExpectation) {
  const auto law = SyntheticDistribution::discrete({{{0.0}, 0.0, 0.5}, {{1.0}, 0.0, 0.5}});
  const auto a = loss_shape([](double x) { return x < 0.5 ? 0.5 : 0.1; });
  const auto b = loss_shape([](double x) { return x < 0.5 ? 0.1 : 0.5; });
  const auto ref = Reference::discrete(law);
  EXPECT_NEAR(dist_between(a, b, Distance::kL1, ref).value, 0.4, 1e-15);
  EXPECT_NEAR(dist_between(a, b, Distance::kExpectation, ref).value, 0.0, 1e-15);
  EXPECT_NEAR(dist_between(a, b, Distance::kSup, ref).value, 0.4, 1e-15);
  EXPECT_EQ(dist_between(a, b, Distance::kL1, ref).std_error, 0.0);
}

TEST(DistBetween, ZeroMassProbesOnlyEnterSup) {
  const auto law = SyntheticDistribution::discrete({{{0.0}, 0.0, 1.0}});
  const auto a = loss_shape([](double x) { return x > 2.0 ? 0.9 : 0.1; });
  const auto b = loss_shape([](double) { return 0.1; });
  const std::vector<Example> extra{{{3.0}, 0.0}};
  const auto ref = Reference::discrete(law).with_extra_probes(extra);
  EXPECT_NEAR(dist_between(a, b, Distance::kSup, ref).value, 0.8, 1e-15);
  EXPECT_EQ(dist_between(a, b, Distance::kL1, ref).value, 0.0);
}

TEST(DistBetween, SampleReferenceReportsStdError) {
  const auto a = loss_shape([](double x) { return x; });
  const auto b = loss_shape([](double) { return 0.0; });
  std::vector<Example> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({{0.1 * i}, 0.0});
  const auto d = dist_between(a, b, Distance::kL1, Reference::sample(pts));
  EXPECT_NEAR(d.value, 0.45, 1e-12);
  EXPECT_GT(d.std_error, 0.0);
}

TEST(DistBetween, EmptyReferenceThrows) {
  EXPECT_THROW(Reference::probes({}), InvalidArgument);
}

TEST(SurvivalCurve, CountsRatiosAtOrAbove) {
  const std::vector<double> ratios{0.0, 1.0, 2.0, 2.0};
  const std::vector<double> grid{0.0, 1.5, 2.0, 2.5};
  const auto c = survival_curve(ratios, grid);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].delta, 1.0);
  EXPECT_EQ(c[1].delta, 0.5);
  EXPECT_EQ(c[2].delta, 0.5);
  EXPECT_EQ(c[3].delta, 0.0);
  EXPECT_NEAR(c[1].std_error, 0.25, 1e-15);
}

TEST(EstimateProfile, ConstantLearnerIsSurelyStable) {
  ProfileOptions o;
  o.reps = 100;
  o.kind = StabilityKind::kCvWeak;
  const Learner c(ConstantSpec{1.0}, LossKind::zero_one());
  const auto est = estimate_profile(c, build_scheme(8, SchemeKind::kLeaveOneOut),
                                    label_noise_law(), o);
  ASSERT_EQ(est.ratios.size(), 100u);
  for (double r : est.ratios) EXPECT_EQ(r, 0.0);
  for (const auto& pt : est.curve) {
    if (pt.lambda > 0.0) {
      EXPECT_EQ(pt.delta, 0.0);
    }
  }
  for (const auto& l : est.lambda_at_delta) EXPECT_EQ(l.lambda, 0.0);
  EXPECT_EQ(est.profile.provenance, Provenance::kEstimated);
  EXPECT_EQ(est.profile.reps, 100u);
}

TEST(EstimateProfile, RegnetNeverExceedsCertificate) {
  const std::size_t n = 100;
  const double cert = certificate_regnet(1.0, 1.0, n, 0.1).lambda;
  EXPECT_NEAR(cert, 0.4, 1e-15);
  ProfileOptions o;
  o.reps = 100;
  o.kind = StabilityKind::kWeak;
  o.distance_ceiling = cert + 1e-9;
  o.seed = 17;
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
  const auto est = estimate_profile(reg, build_scheme(n, SchemeKind::kLeaveOneOut),
                                    six_atoms(), o);
  EXPECT_EQ(est.ceiling_violations, 0u);
  EXPECT_EQ(est.ordering_violations, 0u);
  EXPECT_LE(est.max_distance, cert + 1e-9);
  for (double r : est.ratios) EXPECT_LE(r * (2.0 / n), cert + 1e-9);
}

TEST(EstimateProfile, OneNearestNeighbourCurve) {
  ProfileOptions o;
  o.reps = 200;
  o.kind = StabilityKind::kCvWeak;
  o.distance = Distance::kL1;
  o.alpha = 0.3;
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  const auto est = estimate_profile(knn, build_scheme(12, SchemeKind::kLeaveOneOut),
                                    label_noise_law(), o);
  ASSERT_FALSE(est.curve.empty());
  EXPECT_EQ(est.curve.front().lambda, 0.0);
  EXPECT_EQ(est.curve.front().delta, 1.0);
  for (std::size_t i = 1; i < est.curve.size(); ++i) {
    EXPECT_LE(est.curve[i].delta, est.curve[i - 1].delta);
    EXPECT_GE(est.curve[i].delta, 0.0);
  }
  EXPECT_EQ(est.ordering_violations, 0u);
  EXPECT_EQ(est.pairs_evaluated, 200u * 12u);
  EXPECT_EQ(est.curve.size(), 41u);
  EXPECT_NEAR(est.curve.back().lambda, 1.25 * *std::max_element(est.ratios.begin(), est.ratios.end()),
              1e-12);
}

TEST(EstimateProfile, LambdaAtDeltaIsUpperQuantile) {
  ProfileOptions o;
  o.reps = 300;
  o.kind = StabilityKind::kWeak;
  o.distance = Distance::kL1;
  o.delta_targets = {0.05, 0.2};
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  const auto est = estimate_profile(knn, build_scheme(10, SchemeKind::kLeaveOneOut),
                                    label_noise_law(), o);
  auto sorted = est.ratios;
  std::sort(sorted.begin(), sorted.end());
  ASSERT_EQ(est.lambda_at_delta.size(), 2u);
  for (const auto& l : est.lambda_at_delta) {
    EXPECT_EQ(l.lambda, empirical_quantile(sorted, 1.0 - l.delta));
    const auto above = std::count_if(sorted.begin(), sorted.end(),
                                     [&](double r) { return r > l.lambda; });
    EXPECT_DOUBLE_EQ(l.achieved.point, static_cast<double>(above) / 300.0);
    EXPECT_LE(l.achieved.point, l.delta);
  }
  EXPECT_EQ(est.profile.delta, 0.05);
  EXPECT_EQ(est.profile.lambda, est.lambda_at_delta[0].lambda);
}

TEST(EstimateProfile, CvDeltaWithinUnionOfPerVector) {
  // Same seed: per-vector and sup-over-support ratios on identical samples.
  ProfileOptions o;
  o.reps = 400;
  o.distance = Distance::kL1;
  o.seed = 5;
  const auto scheme = build_scheme(8, SchemeKind::kLeaveOneOut);
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  o.kind = StabilityKind::kWeak;
  const auto weak = estimate_profile(knn, scheme, label_noise_law(), o);
  o.kind = StabilityKind::kCvWeak;
  const auto cv = estimate_profile(knn, scheme, label_noise_law(), o);
  const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 3.0};
  const auto cw = survival_curve(weak.ratios, grid);
  const auto cc = survival_curve(cv.ratios, grid);
  const double kappa = static_cast<double>(scheme.kappa());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(cc[i].delta, kappa * cw[i].delta + 2.0 * (cc[i].std_error + kappa * cw[i].std_error));
  }
  for (std::size_t r = 0; r < weak.ratios.size(); ++r) {
    EXPECT_LE(weak.ratios[r], cv.ratios[r]);
  }
}

TEST(EstimateProfile, StrongKindOnContinuousLaw) {
  ProfileOptions o;
  o.reps = 100;
  o.kind = StabilityKind::kStrong;
  o.distance = Distance::kSup;
  o.z_probes = {{{0.0, 0.0}, 3.0}, {{1.0, 1.0}, -3.0}};
  o.fresh_probes = 2;
  o.probe_grid = 64;
  o.eval_sample = 200;
  const auto law = SyntheticDistribution::gaussian_regression(
      {1.0, -1.0}, 0.0, 0.1, SyntheticDistribution::XLaw::kUniform, 0.0, 1.0);
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.05}, LossKind::squared_clipped(1.0));
  const auto est = estimate_profile(reg, build_scheme(20, SchemeKind::kLeaveOneOut), law, o);
  EXPECT_EQ(est.ratios.size(), 100u);
  EXPECT_EQ(est.ordering_violations, 0u);
  EXPECT_LE(est.max_distance, certificate_regnet(1.0, 1.0, 20, 0.05).lambda + 1e-9);
}

TEST(EstimateProfile, WorkersDoNotChangeRatios) {
  ProfileOptions o;
  o.reps = 120;
  o.kind = StabilityKind::kCvWeak;
  o.distance = Distance::kExpectation;
  o.seed = 3;
  const Learner knn(KnnSpec{3, Task::kClassification}, LossKind::zero_one());
  const auto s = build_scheme(9, SchemeKind::kLeaveOneOut);
  const auto a = estimate_profile(knn, s, label_noise_law(), o);
  o.workers = 4;
  const auto b = estimate_profile(knn, s, label_noise_law(), o);
  EXPECT_EQ(a.ratios, b.ratios);
}

TEST(EstimateProfile, Errors) {
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  const auto law = label_noise_law();
  ProfileOptions o;
  o.reps = 99;
  EXPECT_THROW(estimate_profile(knn, build_scheme(5, SchemeKind::kLeaveOneOut), law, o),
               InvalidArgument);
  o.reps = 100;
  o.kind = StabilityKind::kCvWeak;
  o.support_cap = 3;
  EXPECT_THROW(estimate_profile(knn, build_scheme(5, SchemeKind::kLeaveOneOut), law, o),
               SupportTooLarge);
  o.kind = StabilityKind::kStrong;
  o.fresh_probes = 0;
  EXPECT_THROW(estimate_profile(knn, build_scheme(5, SchemeKind::kLeaveOneOut), law, o),
               InvalidArgument);
  o.kind = StabilityKind::kSure;
  EXPECT_THROW(estimate_profile(knn, build_scheme(5, SchemeKind::kLeaveOneOut), law, o),
               InvalidArgument);
}

TEST(CertificateRegnet, WorkedValues) {
  const auto p = certificate_regnet(1.0, 1.0, 100, 0.1);
  EXPECT_NEAR(p.lambda, 0.4, 1e-15);
  EXPECT_TRUE(p.sure());
  EXPECT_EQ(p.kind, StabilityKind::kSure);
  EXPECT_EQ(p.distance, Distance::kSup);
  EXPECT_EQ(p.alpha, 1.0);
  EXPECT_EQ(p.provenance, Provenance::kCertified);
  EXPECT_NEAR(certificate_regnet(1.0, 1.0, 1000, 0.1).lambda, 0.04, 1e-15);
  EXPECT_NEAR(certificate_regnet(1.0, 2.0, 100, 0.1).lambda, 4.0 * p.lambda, 1e-14);
  EXPECT_THROW(certificate_regnet(1.0, 1.0, 100, 0.0), InvalidArgument);
}

TEST(CertificateKnnTail, WorkedValues) {
  const auto t = certificate_knn_tail(101, 1, 1, 0.5);
  EXPECT_NEAR(t.raw, 6.0 * std::exp(-100.0 * 0.125 / 216.0), 1e-12);
  EXPECT_NEAR(t.raw, 5.66, 5e-3);
  EXPECT_TRUE(t.vacuous);
  EXPECT_EQ(certificate_knn_tail(101, 1, 1, 0.0).raw, 6.0);
  double prev = 7.0;
  for (std::size_t n = 2; n < 20000; n *= 2) {
    const double v = certificate_knn_tail(n, 2, 2, 0.8).raw;
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_FALSE(certificate_knn_tail(1000000, 1, 1, 0.5).vacuous);
}

}  // namespace
}  // namespace stabcv
