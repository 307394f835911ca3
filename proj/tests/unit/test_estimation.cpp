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
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stabcv/error.hpp"
#include "stabcv/estimation.hpp"
#include "stabcv/random.hpp"

namespace stabcv {
namespace {

Example ex(std::vector<double> x, double y, double u = 0.5) {
  return Example{std::move(x), y, u};
}

SyntheticDistribution three_atoms() {
  return SyntheticDistribution::discrete({{{0.0}, 0.0, 0.3},
                                          {{0.5}, 1.0, 0.3},
                                          {{1.0}, 1.0, 0.4}});
}

SyntheticDistribution regression_law() {
  return SyntheticDistribution::gaussian_regression(
      {0.6, -0.4}, 0.1, 0.2, SyntheticDistribution::XLaw::kUniform, -1.0, 1.0);
}

std::vector<Predictor> stump_class() {
  std::vector<Predictor> h;
  for (double thr : {-0.5, 0.0, 0.25, 0.75}) {
    h.emplace_back(std::make_shared<StumpModel>(1, 0, thr, 0.0, 1.0), LossKind::zero_one());
  }
  h.emplace_back(std::make_shared<ConstantModel>(1, 1.0), LossKind::zero_one());
  return h;
}

Learner erm_learner() {
  ErmSpec spec;
  for (const auto& p : stump_class()) spec.hypotheses.push_back(p.shared_model());
  return Learner(spec, LossKind::zero_one());
}

TEST(CvEstimate, OneNearestNeighbourTwoPoints) {
  const LearningSet d({ex({0.0}, 1.0), ex({1.0}, 0.0)});
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  EXPECT_EQ(cv_estimate(knn, d, build_scheme(2, SchemeKind::kLeaveOneOut)), 1.0);
}

TEST(CvEstimate, ConstantLearnerGivesEmpiricalError) {
  Rng rng(1);
  const auto data = three_atoms().sample(20, rng);
  const Learner c(ConstantSpec{1.0}, LossKind::zero_one());
  double wrong = 0.0;
  for (const auto& z : data.examples()) wrong += z.y != 1.0 ? 1.0 : 0.0;
  wrong /= 20.0;
  SchemeParams k5;
  k5.k = 5;
  SchemeParams l2;
  l2.nu = 2;
  for (const auto& s : {build_scheme(20, SchemeKind::kLeaveOneOut),
                        build_scheme(20, SchemeKind::kKFold, k5),
                        build_scheme(20, SchemeKind::kLeaveNuOut, l2)}) {
    EXPECT_NEAR(cv_estimate(c, data, s), wrong, 1e-12);
  }
  EXPECT_NEAR(resub_estimate(c, data), wrong, 1e-15);
}

TEST(CvEstimate, HoldOutIsTestMean) {
  Rng rng(2);
  const auto data = regression_law().sample(10, rng);
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
  SchemeParams hp;
  hp.holdout_mask = {1, 1, 1, 1, 1, 1, 1, 0, 0, 0};
  const auto s = build_scheme(10, SchemeKind::kHoldOut, hp);
  const auto fit = reg.fit(data.subset(s.support()[0].train));
  const double want =
      (fit.eval_loss(data[7]) + fit.eval_loss(data[8]) + fit.eval_loss(data[9])) / 3.0;
  EXPECT_NEAR(cv_estimate(reg, data, s, CvOptions{false, 1}), want, 1e-15);
  EXPECT_NEAR(cv_estimate(reg, data, s), want, 1e-10);
}

TEST(CvEstimate, BruteForceLooAndKFold) {
  Rng rng(3);
  const Learner knn(KnnSpec{3, Task::kClassification}, LossKind::zero_one());
  const Learner erm = erm_learner();
  const Learner reg(RegnetSpec{Kernel::gaussian(0.5), 0.05}, LossKind::squared_clipped(1.0));
  for (std::size_t n : {6u, 12u, 30u}) {
    const auto cls = three_atoms().sample(n, rng);
    const auto rdata = regression_law().sample(n, rng);
    SchemeParams kp;
    kp.k = 3;
    const auto loo = build_scheme(n, SchemeKind::kLeaveOneOut);
    const auto kf = build_scheme(n, SchemeKind::kKFold, kp);
    for (const auto* l : {&knn, &erm, &reg}) {
      const auto& d = l == &reg ? rdata : cls;
      const oracle::FitFn fit = [l](const LearningSet& t) { return l->fit(t); };
      for (bool closed : {true, false}) {
        EXPECT_NEAR(cv_estimate(*l, d, loo, CvOptions{closed, 1}), oracle::loo_loop(fit, d), 1e-12);
        EXPECT_NEAR(cv_estimate(*l, d, kf, CvOptions{closed, 1}), oracle::kfold_loop(fit, d, 3),
                    1e-12);
      }
    }
  }
}

TEST(CvEstimate, PermutationInvariantForSymmetricSchemes) {
  Rng rng(4);
  const Learner erm = erm_learner();
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
  SchemeParams l2;
  l2.nu = 2;
  const auto loo = build_scheme(9, SchemeKind::kLeaveOneOut);
  const auto lnu = build_scheme(9, SchemeKind::kLeaveNuOut, l2);
  for (int t = 0; t < 5; ++t) {
    const auto cls = three_atoms().sample(9, rng);
    const auto rdata = regression_law().sample(9, rng);
    for (const auto* l : {&erm, &reg}) {
      const auto& d = l == &reg ? rdata : cls;
      std::vector<Example> rows(d.examples().begin(), d.examples().end());
      std::shuffle(rows.begin(), rows.end(), rng);
      const LearningSet perm(rows);
      EXPECT_NEAR(cv_estimate(*l, d, loo), cv_estimate(*l, perm, loo), 1e-12);
      EXPECT_NEAR(cv_estimate(*l, d, lnu), cv_estimate(*l, perm, lnu), 1e-12);
    }
  }
}

TEST(CvEstimate, WorkersDoNotChangeResult) {
  Rng rng(5);
  const auto data = three_atoms().sample(16, rng);
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  SchemeParams l2;
  l2.nu = 2;
  const auto s = build_scheme(16, SchemeKind::kLeaveNuOut, l2);
  EXPECT_EQ(cv_estimate(knn, data, s, CvOptions{true, 1}),
            cv_estimate(knn, data, s, CvOptions{true, 4}));
}

TEST(CvEstimate, SeveralSchemesMatchSingleCalls) {
  Rng rng(6);
  const auto data = regression_law().sample(12, rng);
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 0.1}, LossKind::squared_clipped(1.0));
  SchemeParams kp;
  kp.k = 4;
  const auto a = build_scheme(12, SchemeKind::kLeaveOneOut);
  const auto b = build_scheme(12, SchemeKind::kKFold, kp);
  const ResamplingScheme* const both[] = {&a, &b};
  const auto got = cv_estimates(reg, data, both);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_NEAR(got[0], cv_estimate(reg, data, a), 1e-14);
  EXPECT_NEAR(got[1], cv_estimate(reg, data, b), 1e-14);
}

TEST(CvEstimate, Errors) {
  Rng rng(7);
  const auto data = three_atoms().sample(5, rng);
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  EXPECT_THROW(cv_estimate(knn, data, build_scheme(6, SchemeKind::kLeaveOneOut)),
               InvalidArgument);
  // Two-dimensional hypotheses cannot score one-dimensional rows.
  ErmSpec bad;
  bad.hypotheses.push_back(std::make_shared<ConstantModel>(2, 1.0));
  const Learner erm(bad, LossKind::zero_one());
  try {
    cv_estimate(erm, data, build_scheme(5, SchemeKind::kLeaveOneOut));
    FAIL() << "expected FoldError";
  } catch (const FoldError& e) {
    EXPECT_EQ(e.fold(), 0u);
  }
}

TEST(ResubEstimate, OneNearestNeighbourIsZero) {
  Rng rng(8);
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  for (int t = 0; t < 20; ++t) {
    EXPECT_EQ(resub_estimate(knn, three_atoms().sample(25, rng)), 0.0);
  }
}

TEST(ResubEstimate, ConstantAndPerfectErm) {
  std::vector<Example> rows;
  for (int i = 0; i < 10; ++i) rows.push_back(ex({static_cast<double>(i)}, i < 3 ? 1.0 : 0.0));
  const LearningSet d(rows);
  EXPECT_NEAR(resub_estimate(Learner(ConstantSpec{0.0}, LossKind::zero_one()), d), 0.3,
              1e-15);
  ErmSpec spec;
  spec.hypotheses.push_back(std::make_shared<ConstantModel>(1, 1.0));
  spec.hypotheses.push_back(std::make_shared<StumpModel>(1, 0, 2.5, 1.0, 0.0));
  EXPECT_EQ(resub_estimate(Learner(spec, LossKind::zero_one()), d), 0.0);
}

TEST(OracleRisk, DiscreteTable) {
  const auto law = SyntheticDistribution::discrete({{{0.0}, 1.0, 0.3}, {{1.0}, 0.0, 0.7}});
  const auto p = fit_constant(LearningSet({ex({0.0}, 0.0)}), 0.0);
  const auto r = oracle_risk(p, law);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.value, 0.3);
  EXPECT_EQ(r.std_error, 0.0);
}

TEST(OracleRisk, TwoClassConstant) {
  const auto law = SyntheticDistribution::two_class_gaussian({0.0}, {1.0}, 1.0, 0.4);
  const auto p = fit_constant(LearningSet({ex({0.0}, 0.0)}), 1.0);
  const auto r = oracle_risk(p, law, 100000, 3);
  EXPECT_FALSE(r.exact);
  EXPECT_NEAR(r.value, 0.6, 3.0 * r.std_error);
  EXPECT_THROW(oracle_risk(p, law), InvalidArgument);
}

TEST(OracleRisk, MonteCarloAgreesWithExact) {
  Rng rng(9);
  const auto law = three_atoms();
  const Learner knn(KnnSpec{3, Task::kClassification}, LossKind::zero_one());
  const auto p = knn.fit(law.sample(15, rng));
  const auto exact = oracle_risk(p, law);
  const auto mc = oracle_risk(p, law, 100000, 11);
  EXPECT_NEAR(mc.value, exact.value, 3.0 * mc.std_error + 1e-12);
}

TEST(OracleRisk, ExactIntegratesQueryTiebreak) {
  // Two training points equidistant from the query atom, opposite labels:
  // the prediction depends on u, and exactly one cell of it is wrong.
  const LearningSet train({ex({-1.0}, 0.0, 0.2), ex({1.0}, 1.0, 0.6)});
  const auto p = fit_knn(train, 1);
  const auto law = SyntheticDistribution::discrete({{{0.0}, 1.0, 1.0}});
  // u < 0.4 is closer to 0.2 (label 0, wrong).
  EXPECT_NEAR(oracle_risk(p, law).value, 0.4, 1e-12);
}

TEST(ErrorTriple, OneNearestNeighbourPathology) {
  Rng rng(10);
  const auto law = SyntheticDistribution::two_class_gaussian({0.0}, {0.5}, 1.0, 0.5);
  const Learner knn(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
  const auto data = law.sample(40, rng);
  const auto t = error_triple(knn, data, build_scheme(40, SchemeKind::kLeaveOneOut), law,
                              20000, 1);
  EXPECT_EQ(t.r_hat, 0.0);
  EXPECT_GT(t.r_tilde, 0.2);
  EXPECT_EQ(t.gap, std::abs(t.r_cv - t.r_tilde));
}

TEST(ErrorTriple, ConstantLearnerCvEqualsResub) {
  Rng rng(11);
  const auto law = three_atoms();
  const auto data = law.sample(30, rng);
  const auto t = error_triple(Learner(ConstantSpec{1.0}, LossKind::zero_one()), data,
                              build_scheme(30, SchemeKind::kLeaveOneOut), law);
  EXPECT_NEAR(t.r_cv, t.r_hat, 1e-12);
  EXPECT_NEAR(t.r_tilde, 0.3, 1e-15);
}

TEST(ErrorTriple, HugePenaltyRegnetMatchesQuadrature) {
  // slope 0: y ~ N(0.3, 0.2^2) independent of x, predictor ~ 0.
  const double mu = 0.3;
  const double sigma = 0.2;
  const auto law = SyntheticDistribution::gaussian_regression(
      {0.0}, mu, sigma, SyntheticDistribution::XLaw::kUniform, 0.0, 1.0);
  const auto density = [&](double y) {
    const double z = (y - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
  };
  const double truth = oracle::simpson(
      [&](double y) { return std::min(y * y, 1.0) * density(y); }, mu - 12 * sigma,
      mu + 12 * sigma, 20000);

  Rng rng(12);
  const auto data = law.sample(200, rng);
  const Learner reg(RegnetSpec{Kernel::gaussian(1.0), 1e9}, LossKind::squared_clipped(1.0));
  const auto t = error_triple(reg, data, build_scheme(200, SchemeKind::kLeaveOneOut), law,
                              100000, 5);
  EXPECT_NEAR(t.r_tilde, truth, 3.0 * t.r_tilde_stderr + 1e-6);

  std::vector<double> zero_losses;
  for (const auto& z : data.examples()) zero_losses.push_back(std::min(z.y * z.y, 1.0));
  const double sample_mean =
      std::accumulate(zero_losses.begin(), zero_losses.end(), 0.0) / 200.0;
  EXPECT_NEAR(t.r_hat, sample_mean, 1e-6);
  EXPECT_NEAR(t.r_cv, sample_mean, 1e-6);
}

TEST(ErrorTriple, OutputsInUnitInterval) {
  Rng rng(13);
  const auto law = regression_law();
  const Learner reg(RegnetSpec{Kernel::linear(), 0.01}, LossKind::squared_clipped(0.1));
  for (int t = 0; t < 10; ++t) {
    const auto e = error_triple(reg, law.sample(15, rng), build_scheme(15, SchemeKind::kLeaveOneOut),
                                law, 2000, static_cast<std::uint64_t>(t));
    for (double v : {e.r_cv, e.r_tilde, e.r_hat, e.gap}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

}  // namespace
}  // namespace stabcv
