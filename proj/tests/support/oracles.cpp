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


#include "oracles.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>


namespace stabcv::oracle {

std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) throw std::runtime_error("singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

double ridge_predict(const LearningSet& train,
                     const std::function<double(const std::vector<double>&,
                                                const std::vector<double>&)>& k,
                     double lambda, const std::vector<double>& x) {
  const std::size_t n = train.size();
  Matrix a(n, std::vector<double>(n));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = train[i].y;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = k(train[i].x, train[j].x);
    a[i][i] += static_cast<double>(n) * lambda;
  }
  const auto c = dense_solve(a, y);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += c[i] * k(train[i].x, x);
  return s;
}

double loo_loop(const FitFn& fit, const LearningSet& data) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<Example> rest;
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (j != i) rest.push_back(data[j]);
    }
    total += fit(LearningSet(rest)).eval_loss(data[i]);
  }
  return total / static_cast<double>(data.size());
}

double kfold_loop(const FitFn& fit, const LearningSet& data, std::size_t k) {
  const std::size_t n = data.size();
  const std::size_t block = n / k;
  double total = 0.0;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<Example> train;
    std::vector<Example> test;
    for (std::size_t j = 0; j < n; ++j) {
      (j / block == f ? test : train).push_back(data[j]);
    }
    const Predictor p = fit(LearningSet(train));
    double fold = 0.0;
    for (const Example& z : test) fold += p.eval_loss(z);
    total += fold / static_cast<double>(test.size());
  }
  return total / static_cast<double>(k);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  }
  return s * h / 3.0;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

long double tv_long(const std::vector<int>& u, const std::vector<int>& v) {
  long double su = 0, sv = 0;
  for (int b : u) su += b;
  for (int b : v) sv += b;
  long double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += std::fabs(static_cast<long double>(u[i]) / su -
                   static_cast<long double>(v[i]) / sv);
  }
  return s;
}

double majority_label(const LearningSet& data) {
  std::map<double, std::size_t> counts;
  for (const Example& z : data.examples()) ++counts[z.y];
  double best = counts.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [label, c] : counts) {
    if (c > best_count) {
      best = label;
      best_count = c;
    }
  }
  return best;
}

double mean_label(const LearningSet& data) {
  double s = 0.0;
  for (const Example& z : data.examples()) s += z.y;
  return s / static_cast<double>(data.size());
}

}  // namespace stabcv::oracle
