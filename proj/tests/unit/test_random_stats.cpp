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


#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "stabcv/data.hpp"
#include "stabcv/error.hpp"
#include "stabcv/laws.hpp"
#include "stabcv/parallel.hpp"
#include "stabcv/random.hpp"
#include "stabcv/resampling.hpp"
#include "stabcv/stats.hpp"

namespace stabcv {
namespace {

TEST(Random, StreamsAreDeterministicAndDistinct) {
  EXPECT_EQ(stream_seed(1, 2), stream_seed(1, 2));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(stream_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  Rng a = make_stream(7, 3, StreamTag::kData);
  Rng b = make_stream(7, 3, StreamTag::kOracle);
  EXPECT_NE(a(), b());
}

TEST(Random, Uniform01Range) {
  Rng rng(1);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(Random, RadicalInverse) {
  EXPECT_EQ(radical_inverse(1, 2), 0.5);
  EXPECT_EQ(radical_inverse(3, 2), 0.75);
  EXPECT_NEAR(radical_inverse(5, 3), 7.0 / 9.0, 1e-15);
  const auto pts = halton_points(16, 3);
  ASSERT_EQ(pts.size(), 16u);
  for (const auto& p : pts) {
    ASSERT_EQ(p.size(), 3u);
    for (double v : p) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(Stats, PairwiseSumIsExactOnIntegers) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(Stats, MeanWithStderr) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto m = mean_with_stderr(v);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(m.count, 4u);
}

TEST(Stats, WilsonPublishedValues) {
  // 10 successes in 100 trials at 95%: (0.0552, 0.1744).
  const auto w = wilson_interval(10, 100, 1.959964);
  EXPECT_NEAR(w.lower, 0.0552, 1e-4);
  EXPECT_NEAR(w.upper, 0.1744, 1e-4);
  EXPECT_EQ(w.point, 0.1);
  const auto zero = wilson_interval(0, 50, 3.0);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_GT(zero.upper, 0.0);
  const auto all = wilson_interval(50, 50, 3.0);
  EXPECT_EQ(all.upper, 1.0);
  EXPECT_THROW(wilson_interval(0, 0, 1.0), InvalidArgument);
}

TEST(Stats, WilsonContainsPoint) {
  for (std::size_t n : {1u, 7u, 100u, 10000u}) {
    for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 13)) {
      const auto w = wilson_interval(k, n, 3.0);
      EXPECT_LE(w.lower, w.point);
      EXPECT_GE(w.upper, w.point);
      EXPECT_GE(w.lower, 0.0);
      EXPECT_LE(w.upper, 1.0);
    }
  }
}

TEST(Stats, EmpiricalQuantile) {
  const std::vector<double> s{1.0, 2.0, 3.0, 4.0, 5.0};
  EXPECT_EQ(empirical_quantile(s, 0.0), 1.0);
  EXPECT_EQ(empirical_quantile(s, 0.2), 1.0);
  EXPECT_EQ(empirical_quantile(s, 0.21), 2.0);
  EXPECT_EQ(empirical_quantile(s, 0.95), 5.0);
  EXPECT_EQ(empirical_quantile(s, 1.0), 5.0);
}

TEST(Stats, BinomialAndGrids) {
  EXPECT_EQ(binomial_coefficient(10, 2), 45.0);
  EXPECT_EQ(binomial_coefficient(30, 15), 155117520.0);
  EXPECT_EQ(binomial_coefficient(3, 5), 0.0);
  const auto l = linspace(0.0, 1.0, 5);
  EXPECT_EQ(l, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const auto g = logspace(0.01, 1.0, 3);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[0], 0.01, 1e-15);
  EXPECT_NEAR(g[1], 0.1, 1e-15);
  EXPECT_NEAR(g[2], 1.0, 1e-15);
}

TEST(Parallel, SlotsIndependentOfWorkers) {
  std::vector<double> a(500);
  std::vector<double> b(500);
  const auto fill = [](std::vector<double>& out) {
    return [&out](std::size_t i) {
      Rng rng = make_stream(9, i);
      out[i] = uniform01(rng);
    };
  };
  parallel_for(500, 1, fill(a));
  parallel_for(500, 6, fill(b));
  EXPECT_EQ(a, b);
}

TEST(Parallel, RethrowsSmallestFailingIndex) {
  try {
    parallel_for(100, 1, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
  EXPECT_THROW(parallel_for(100, 4, [](std::size_t i) {
                 if (i == 3) throw std::runtime_error("x");
               }),
               std::runtime_error);
}

TEST(Data, SubsetWithoutAppend) {
  const LearningSet d({{{0.0}, 1.0, 0.1}, {{1.0}, 0.0, 0.2}, {{2.0}, 1.0, 0.3}});
  const auto s = d.subset(BinaryVector({1, 0, 1}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].x[0], 2.0);
  EXPECT_EQ(s[1].u, 0.3);
  EXPECT_EQ(d.without(0)[0].x[0], 1.0);
  EXPECT_EQ(d.with_appended({{5.0}, 0.0, 0.9}).size(), 4u);
  EXPECT_THROW(LearningSet({{{0.0}, 1.0}, {{0.0, 1.0}, 1.0}}), InvalidArgument);
}

TEST(Data, LoadCsv) {
  const auto path = std::filesystem::temp_directory_path() / "stabcv_load_csv_test.csv";
  {
    std::ofstream out(path);
    out << "a,y,b,u\n0.5,1,2,0.25\n1.5,0,3,\n";
  }
  const auto d = load_csv(path, 3);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_EQ(d[0].x, (std::vector<double>{0.5, 2.0}));
  EXPECT_EQ(d[0].u, 0.25);
  EXPECT_GE(d[1].u, 0.0);
  EXPECT_LE(d[1].u, 1.0);
  EXPECT_EQ(load_csv(path, 3)[1].u, d[1].u);
  {
    std::ofstream out(path);
    out << "a,b\n1,2\n";
  }
  EXPECT_THROW(load_csv(path, 0), InvalidArgument);
  std::filesystem::remove(path);
  EXPECT_THROW(load_csv(path, 0), InvalidArgument);
}

TEST(Laws, DiscreteValidation) {
  EXPECT_THROW(SyntheticDistribution::discrete({{{0.0}, 1.0, 0.5}, {{1.0}, 0.0, 0.4}}),
               InvalidArgument);
  EXPECT_THROW(SyntheticDistribution::discrete({{{0.0}, 1.0, 1.5}, {{1.0}, 0.0, -0.5}}),
               InvalidArgument);
  EXPECT_THROW(SyntheticDistribution::discrete({}), InvalidArgument);
}

TEST(Laws, DiscreteSamplingFrequencies) {
  const auto law = SyntheticDistribution::discrete({{{0.0}, 0.0, 0.2}, {{1.0}, 1.0, 0.8}});
  Rng rng(5);
  const auto d = law.sample(20000, rng);
  double ones = 0.0;
  for (const auto& z : d.examples()) ones += z.y;
  const double f = ones / 20000.0;
  EXPECT_NEAR(f, 0.8, 4.0 * std::sqrt(0.16 / 20000.0));
  EXPECT_EQ(law.label_values(), (std::vector<double>{0.0, 1.0}));
}

TEST(Laws, SamplingIsSeeded) {
  const auto law = SyntheticDistribution::two_class_gaussian({0.0, 0.0}, {1.0, 1.0}, 0.5, 0.3);
  Rng a(11);
  Rng b(11);
  const auto da = law.sample(50, a);
  const auto db = law.sample(50, b);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(da[i].x, db[i].x);
    EXPECT_EQ(da[i].y, db[i].y);
    EXPECT_EQ(da[i].u, db[i].u);
  }
}

TEST(Laws, GaussianRegressionMoments) {
  const auto law = SyntheticDistribution::gaussian_regression(
      {2.0}, 1.0, 0.5, SyntheticDistribution::XLaw::kUniform, 0.0, 1.0);
  Rng rng(2);
  const auto d = law.sample(40000, rng);
  std::vector<double> resid;
  for (const auto& z : d.examples()) {
    EXPECT_GE(z.x[0], 0.0);
    EXPECT_LE(z.x[0], 1.0);
    resid.push_back(z.y - 1.0 - 2.0 * z.x[0]);
  }
  const auto m = mean_with_stderr(resid);
  EXPECT_NEAR(m.mean, 0.0, 4.0 * m.std_error);
  EXPECT_NEAR(m.std_error * std::sqrt(40000.0), 0.5, 0.01);
}

TEST(Laws, BoxAndProbeGrid) {
  const auto law = SyntheticDistribution::discrete({{{0.0, 3.0}, 0.0, 0.5}, {{1.0, -1.0}, 1.0, 0.5}});
  const auto box = law.box();
  EXPECT_EQ(box.x_lo, (std::vector<double>{0.0, -1.0}));
  EXPECT_EQ(box.x_hi, (std::vector<double>{1.0, 3.0}));
  const auto grid = law.probe_grid(64);
  ASSERT_EQ(grid.size(), 64u);
  for (const auto& z : grid) {
    EXPECT_GE(z.x[0], 0.0);
    EXPECT_LE(z.x[0], 1.0);
    EXPECT_TRUE(z.y == 0.0 || z.y == 1.0);
  }
}

}  // namespace
}  // namespace stabcv
