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


#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "stabcv/bounds.hpp"
#include "stabcv/estimation.hpp"
#include "stabcv/json_io.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/resampling.hpp"
#include "stabcv/stability.hpp"

namespace stabcv::cli {

namespace {

struct Check {
  std::string name;
  std::function<double()> got;
  double want;
  double tol;
};

LearningSet two_points() {
  return LearningSet({{{0.0}, 1.0, 0.3}, {{1.0}, 0.0, 0.7}});
}

std::vector<Check> checks() {
  const double kTight = 1e-12;
  return {
      {"hoeffding n=50 eps=0.2", [] { return hoeffding_tail(50, 0.2, 1.0); },
       std::exp(-4.0), kTight},
      {"mcdiarmid 100 x 1/100 eps=0.1",
       [] { return mcdiarmid_tail(0.1, std::vector<double>(100, 0.01)); },
       std::exp(-2.0), kTight},
      {"expectation_from_tail C=2 K=8", [] { return expectation_from_tail(2.0, 8.0); },
       std::sqrt((std::log(2.0) + 2.0) / 8.0), kTight},
      {"expectation_from_tail C=1 K=1", [] { return expectation_from_tail(1.0, 1.0); },
       std::sqrt(2.0), kTight},
      {"generic tail raw",
       [] { return generic_stability_tail(100, 0.1, 0.3, 0.5, 1.0, 0.01).raw; },
       2.0 * std::exp(-1.8) + 0.01, kTight},
      {"generic tail shift",
       [] { return generic_stability_tail(100, 0.1, 0.3, 0.5, 1.0, 0.01).threshold_shift; },
       0.1, kTight},
      {"hold-out uniform tail",
       [] { return holdout_uniform_tail(100, 0.1, 0.5, 0.1, 1.0, 0.0, 0.0).raw; },
       4.0 * std::exp(-0.25 / (8.0 * 0.18 * 0.18)), 1e-12},
      {"kutin strong tail",
       [] { return kutin_strong_tail(10, 1.0, 1.0, 0.1, 0.0, 0.025); },
       2.0 * std::exp(-0.8), kTight},
      {"kutin weak display",
       [] { return kutin_weak_displayed(10, 0.5, 0.1, 0.1, 0.0); },
       2.0 * std::exp(-0.25 / ((1.0 + 1.0 / 15.0) * (1.0 + 1.0 / 15.0))), kTight},
      {"l1 weak-general",
       [] { return l1_bound(L1Kind::kWeakGeneral, 100, 0.1, 0.5, 0.01); },
       0.1 + std::sqrt(0.2) + 0.01, kTight},
      {"regnet certificate n=100", [] { return certificate_regnet(1, 1, 100, 0.1).lambda; },
       0.4, kTight},
      {"regnet certificate n=1000",
       [] { return certificate_regnet(1, 1, 1000, 0.1).lambda; }, 0.04, kTight},
      {"knn tail n=101 eps=0.5", [] { return certificate_knn_tail(101, 1, 1, 0.5).raw; },
       6.0 * std::exp(-100.0 * 0.125 / 216.0), kTight},
      {"optimal split weak-general",
       [] { return optimal_split(L1Kind::kWeakGeneral, 1000, 1.0).p_star; },
       std::pow(1.0 / (4.0 * std::sqrt(2.0)), 2.0 / 3.0) / 10.0, 1e-12},
      {"optimal split strong-uniform",
       [] { return optimal_split(L1Kind::kStrongUniform, 100, 1.0).p_star; }, 0.01,
       kTight},
      {"uniform strong explicit alpha'",
       [] {
         const double a = 5.0 * 1.0 * std::pow(2.0 * 0.01, 1.0);
         return uniform_stability_tail_strong(100, 0.01, 0.2, 1.0, 1.0, 0.0, 0.0, a).raw -
                uniform_stability_tail_strong(100, 0.01, 0.2, 1.0, 1.0, 0.0, 0.0).raw;
       },
       0.0, 0.0},
      {"TV leave-one-out n=10",
       [] {
         const auto s = build_scheme(10, SchemeKind::kLeaveOneOut);
         return total_variation(s.support()[0].train, BinaryVector::ones(10));
       },
       0.2, 0.0},
      {"TV leave-2-out n=10",
       [] {
         SchemeParams p;
         p.nu = 2;
         const auto s = build_scheme(10, SchemeKind::kLeaveNuOut, p);
         return total_variation(s.support()[0].train, BinaryVector::ones(10));
       },
       0.4, 0.0},
      {"leave-2-out support n=5",
       [] {
         SchemeParams p;
         p.nu = 2;
         return static_cast<double>(build_scheme(5, SchemeKind::kLeaveNuOut, p).kappa());
       },
       10.0, 0.0},
      {"k-fold inclusion n=6 k=3",
       [] {
         SchemeParams p;
         p.k = 3;
         return scheme_symmetry_check(build_scheme(6, SchemeKind::kKFold, p))
             .train_probability[0];
       },
       2.0 / 3.0, kTight},
      {"regnet single point",
       [] {
         const LearningSet d({{{0.0}, 1.0, 0.5}});
         return fit_regnet(d, Kernel::linear(), 1.0).predict({{0.0}, 0.0, 0.5});
       },
       0.5, kTight},
      {"1-NN nearest label",
       [] { return fit_knn(two_points(), 1).predict({{0.1}, 0.0, 0.5}); }, 1.0, 0.0},
      {"1-NN leave-one-out estimate",
       [] {
         const Learner l(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
         return cv_estimate(l, two_points(), build_scheme(2, SchemeKind::kLeaveOneOut));
       },
       1.0, 0.0},
      {"1-NN resubstitution",
       [] {
         const Learner l(KnnSpec{1, Task::kClassification}, LossKind::zero_one());
         return resub_estimate(l, two_points());
       },
       0.0, 0.0},
      {"squared-clipped loss M=4",
       [] { return LossKind::squared_clipped(4.0)(1.0, 0.0); }, 0.25, 0.0},
  };
}

}  // namespace

bool selftest(std::ostream& out) {
  bool all = true;
  for (const Check& c : checks()) {
    double got = 0.0;
    bool ok = false;
    std::string note;
    try {
      got = c.got();
      ok = std::abs(got - c.want) <= c.tol;
    } catch (const std::exception& e) {
      note = std::string(" error: ") + e.what();
    }
    all = all && ok;
    out << (ok ? "ok   " : "FAIL ") << c.name << "  got=" << format_double(got)
        << " want=" << format_double(c.want) << note << '\n';
  }
  return all;
}

}  // namespace stabcv::cli
