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


#include "stabcv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stabcv/error.hpp"

namespace stabcv {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

void check_common(std::size_t n, double p, double eps, double lambda,
                  double alpha) {
  require(n >= 1, "bound: n must be >= 1");
  require(p > 0.0 && p <= 1.0, "bound: p must lie in (0, 1]");
  require(eps >= 0.0, "bound: eps must be >= 0");
  require(lambda >= 0.0 && std::isfinite(lambda), "bound: lambda must be >= 0");
  require(alpha > 0.0 && alpha <= 1.0, "bound: alpha must lie in (0, 1]");
}

void check_delta(double delta, const char* what) {
  require(delta >= 0.0 && std::isfinite(delta), what);
}

// lambda (2p)^alpha
double stability_shift(double lambda, double p, double alpha) {
  return lambda * std::pow(2.0 * p, alpha);
}

const std::vector<double>& envelope_grid() {
  static const std::vector<double> grid = [] {
    constexpr int kPerDecade = 200;
    constexpr int kLo = -12;
    constexpr int kHi = 6;
    std::vector<double> g;
    for (int i = kLo * kPerDecade; i <= kHi * kPerDecade; ++i) {
      g.push_back(std::pow(10.0, static_cast<double>(i) / kPerDecade));
    }
    return g;
  }();
  return grid;
}

double golden_minimum(const std::function<double(double)>& f, double a,
                      double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace

double running_minimum(const std::function<double(double)>& f, double eps) {
  if (!(eps > 0.0)) return f(std::max(eps, 0.0));
  // f(0) is the limit from the right, so it belongs to the infimum too.
  double best = std::min(f(0.0), f(eps));
  const auto& g = envelope_grid();
  std::vector<double> values;
  values.reserve(g.size());
  for (double x : g) {
    if (x > eps) break;
    values.push_back(f(x));
    best = std::min(best, values.back());
  }
  // Refine every grid-local minimum whose bracket lies inside (0, eps].
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] <= values[i - 1] && values[i] <= values[i + 1] &&
        (values[i] < values[i - 1] || values[i] < values[i + 1])) {
      const double x = golden_minimum(f, g[i - 1], g[i + 1]);
      best = std::min(best, f(x));
    }
  }
  return best;
}

TailBound make_tail(double shift, double raw,
                    std::vector<std::pair<std::string, double>> inputs,
                    std::optional<double> displayed) {
  if (std::isnan(raw)) throw NumericalError("tail bound evaluated to NaN");
  TailBound t;
  t.threshold_shift = shift;
  t.raw = raw;
  t.clipped = std::min(raw, 1.0);
  t.vacuous = raw >= 1.0;
  t.displayed = displayed.value_or(raw);
  t.inputs = std::move(inputs);
  return t;
}

VcTerms vc_terms(std::size_t n, double p, double eps, double vc_dim,
                 const VcOptions& options) {
  require(n >= 1, "vc_baseline: n must be >= 1");
  require(p > 0.0 && p < 1.0, "vc_baseline: p must lie in (0, 1)");
  require(eps > 0.0, "vc_baseline: eps must be > 0");
  require(vc_dim >= 1.0, "vc_baseline: VC dimension must be >= 1");
  const double nn = static_cast<double>(n);
  const double q = 1.0 - p;
  VcTerms t;
  const double log_b = std::log(5.0) +
                       (4.0 * vc_dim / q) * std::log(2.0 * nn * q + 1.0) -
                       nn * eps * eps / 64.0;
  t.b = std::exp(log_b);
  t.v_first = std::exp(-2.0 * nn * p * eps * eps / 25.0);
  const double arg =
      options.log_argument_with_n ? 2.0 * nn * q + 1.0 : 2.0 * q + 1.0;
  t.v_second =
      (16.0 / eps) * std::sqrt(vc_dim * (std::log(arg) + 4.0) / (nn * q));
  return t;
}

TailBound vc_baseline(std::size_t n, double p, double eps, double vc_dim,
                      const VcOptions& options) {
  const VcTerms t = vc_terms(n, p, eps, vc_dim, options);
  return make_tail(0.0, t.b + std::min(t.v_first, t.v_second),
                   {{"n", static_cast<double>(n)},
                    {"p", p},
                    {"eps", eps},
                    {"vc_dim", vc_dim}});
}

TailBound generic_stability_tail(std::size_t n, double p, double eps,
                                 double lambda, double alpha, double delta,
                                 double multiplier) {
  check_common(n, p, eps, lambda, alpha);
  check_delta(delta, "generic tail: delta must be >= 0");
  require(multiplier >= 1.0, "generic tail: multiplier must be >= 1");
  const double nn = static_cast<double>(n);
  const double raw = 2.0 * std::exp(-2.0 * nn * p * eps * eps) +
                     multiplier * delta;
  return make_tail(stability_shift(lambda, p, alpha), raw,
                   {{"n", nn},
                    {"p", p},
                    {"eps", eps},
                    {"lambda", lambda},
                    {"alpha", alpha},
                    {"delta", delta},
                    {"multiplier", multiplier}});
}

TailBound uniform_stability_tail_strong(std::size_t n, double p, double eps,
                                        double lambda, double alpha,
                                        double delta, double delta_loo_next,
                                        std::optional<double> alpha_prime) {
  check_common(n, p, eps, lambda, alpha);
  check_delta(delta, "uniform strong tail: delta must be >= 0");
  check_delta(delta_loo_next, "uniform strong tail: delta_next must be >= 0");
  const double nn = static_cast<double>(n);
  const double shift = stability_shift(lambda, p, alpha);
  const double c = 5.0 * shift;
  if (!alpha_prime && lambda == 0.0) {
    throw InvalidArgument(
        "uniform strong tail: lambda = 0 needs an explicit alpha_prime");
  }
  const double a = alpha_prime.value_or(c);
  require(a > 0.0, "uniform strong tail: alpha_prime must be > 0");
  const double delta_prime = delta + (nn + 1.0) * delta_loo_next;
  const double s = c + a;
  const double denom = 8.0 * nn * (s * s);
  const double raw = 4.0 * (std::exp(-(eps * eps) / denom) +
                            (nn / a) * delta_prime);
  return make_tail(delta + shift, raw,
                   {{"n", nn},
                    {"p", p},
                    {"eps", eps},
                    {"lambda", lambda},
                    {"alpha", alpha},
                    {"delta", delta},
                    {"delta_loo_next", delta_loo_next},
                    {"alpha_prime", a}});
}

TailBound uniform_stability_tail_weak(std::size_t n, double p, double eps,
                                      double lambda, double alpha,
                                      double delta, double delta_prime) {
  check_common(n, p, eps, lambda, alpha);
  check_delta(delta, "uniform weak tail: delta must be >= 0");
  check_delta(delta_prime, "uniform weak tail: delta' must be >= 0");
  require(lambda > 0.0, "uniform weak tail: lambda must be > 0");
  const double nn = static_cast<double>(n);
  const double shift = stability_shift(lambda, p, alpha);
  const double c = 5.0 * shift;
  const double root = std::sqrt(delta_prime);
  auto display = [=](double e) {
    const double widen = 1.0 + 2.0 * e / (15.0 * nn * c);
    double v = std::exp(-(e * e) / (10.0 * nn * c * c * widen * widen));
    if (root > 0.0) {
      v += (2.0 * nn * root / c) * std::exp(e * nn / (4.0 * nn * c * c)) +
           nn * root;
    }
    return 4.0 * v;
  };
  const double shown = display(eps);
  const double raw = root > 0.0 ? running_minimum(display, eps) : shown;
  return make_tail(delta + shift, raw,
                   {{"n", nn},
                    {"p", p},
                    {"eps", eps},
                    {"lambda", lambda},
                    {"alpha", alpha},
                    {"delta", delta},
                    {"delta_prime", delta_prime}},
                   shown);
}

TailBound holdout_uniform_tail(std::size_t n, double p, double eps,
                               double lambda, double alpha, double delta,
                               double delta_loo,
                               const HoldoutOptions& options) {
  check_common(n, p, eps, lambda, alpha);
  check_delta(delta, "hold-out tail: delta must be >= 0");
  check_delta(delta_loo, "hold-out tail: delta_loo must be >= 0");
  const double nn = static_cast<double>(n);
  const double shift = stability_shift(lambda, p, alpha);
  const double h = 4.0 * shift + 1.0 / (nn * p);
  const double delta_prime = delta + nn * delta_loo;
  const double denom = options.exponent_with_n ? 8.0 * nn * h * h : 8.0 * h * h;
  const double raw =
      4.0 * (std::exp(-(eps * eps) / denom) + (nn * nn / h) * delta_prime);
  return make_tail(delta + shift, raw,
                   {{"n", nn},
                    {"p", p},
                    {"eps", eps},
                    {"lambda", lambda},
                    {"alpha", alpha},
                    {"delta", delta},
                    {"delta_loo", delta_loo}});
}

std::string_view to_string(L1Kind kind) noexcept {
  return kind == L1Kind::kWeakGeneral ? "weak-general" : "strong-uniform";
}

L1Kind l1_kind_from_string(std::string_view name) {
  if (name == "weak-general") return L1Kind::kWeakGeneral;
  if (name == "strong-uniform") return L1Kind::kStrongUniform;
  throw InvalidArgument("unknown L1 bound kind '" + std::string(name) +
                        "' (expected weak-general or strong-uniform)");
}

double l1_bound(L1Kind kind, std::size_t n, double p, double lambda,
                double delta, double delta_prime) {
  require(n >= 1, "l1_bound: n must be >= 1");
  require(p > 0.0 && p <= 1.0, "l1_bound: p must lie in (0, 1]");
  require(lambda >= 0.0, "l1_bound: lambda must be >= 0");
  check_delta(delta, "l1_bound: delta must be >= 0");
  check_delta(delta_prime, "l1_bound: delta' must be >= 0");
  const double nn = static_cast<double>(n);
  if (kind == L1Kind::kWeakGeneral) {
    return 2.0 * lambda * p + std::sqrt(2.0 / (nn * p)) + delta;
  }
  require(lambda > 0.0, "l1_bound: strong-uniform needs lambda > 0");
  return delta + 2.0 * lambda * p + 51.0 * lambda * std::sqrt(nn) * p +
         (nn / (9.0 * lambda * p)) * delta_prime;
}

SplitRule optimal_split(L1Kind kind, std::size_t n, double lambda) {
  require(n >= 2, "optimal_split: n must be >= 2");
  require(lambda > 0.0, "optimal_split: lambda must be > 0");
  const double nn = static_cast<double>(n);
  SplitRule r;
  if (kind == L1Kind::kStrongUniform) {
    r.p_star = 1.0 / nn;
    r.objective = l1_bound(kind, n, r.p_star, lambda, 0.0);
    r.interior = false;
    return r;
  }
  const double raw = std::pow(1.0 / (4.0 * std::numbers::sqrt2 * lambda),
                              2.0 / 3.0) *
                     std::pow(nn, -1.0 / 3.0);
  r.p_star = std::clamp(raw, 1.0 / nn, 0.5);
  r.interior = r.p_star == raw;
  r.objective = 4.0 * lambda * r.p_star + std::sqrt(2.0 / (nn * r.p_star));
  return r;
}

double hoeffding_tail(std::size_t n, double eps,
                      std::span<const Range> ranges) {
  require(n >= 1, "hoeffding: n must be >= 1");
  require(ranges.size() == n, "hoeffding: need one range per variable");
  require(eps >= 0.0, "hoeffding: eps must be >= 0");
  double s = 0.0;
  for (const Range& r : ranges) {
    require(r.hi > r.lo, "hoeffding: every range needs b > a");
    s += (r.hi - r.lo) * (r.hi - r.lo);
  }
  const double nn = static_cast<double>(n);
  return std::exp(-2.0 * nn * nn * eps * eps / s);
}

double hoeffding_tail(std::size_t n, double eps, double width) {
  const std::vector<Range> ranges(n, Range{0.0, width});
  return hoeffding_tail(n, eps, ranges);
}

double mcdiarmid_tail(double eps, std::span<const double> c) {
  require(!c.empty(), "mcdiarmid: no coordinates");
  require(eps >= 0.0, "mcdiarmid: eps must be >= 0");
  double s = 0.0;
  for (double ci : c) {
    require(ci >= 0.0, "mcdiarmid: c_i must be >= 0");
    s += ci * ci;
  }
  require(s > 0.0, "mcdiarmid: all c_i are zero");
  return std::exp(-2.0 * eps * eps / s);
}

double kutin_strong_tail(std::size_t n, double tau, double b, double c,
                         double delta, double alpha_prime) {
  require(n >= 1, "kutin strong: n must be >= 1");
  require(c >= 0.0 && b >= c, "kutin strong: need b >= c >= 0");
  require(alpha_prime > 0.0, "kutin strong: alpha' must be > 0");
  require(tau >= 0.0, "kutin strong: tau must be >= 0");
  check_delta(delta, "kutin strong: delta must be >= 0");
  const double nn = static_cast<double>(n);
  const double s = c + b * alpha_prime;
  return 2.0 * (std::exp(-(tau * tau) / (8.0 * nn * s * s)) +
                (nn / alpha_prime) * delta);
}

double kutin_weak_displayed(std::size_t n, double eps, double b, double c,
                            double delta) {
  require(n >= 1, "kutin weak: n must be >= 1");
  require(c > 0.0 && b >= c, "kutin weak: need b >= c > 0");
  require(eps >= 0.0, "kutin weak: eps must be >= 0");
  check_delta(delta, "kutin weak: delta must be >= 0");
  const double nn = static_cast<double>(n);
  const double widen = 1.0 + 2.0 * eps / (15.0 * nn * c);
  double v = 2.0 * std::exp(-(eps * eps) / (10.0 * nn * c * c * widen * widen));
  const double root = std::sqrt(delta);
  if (root > 0.0) {
    v += (2.0 * nn * b * root / c) * std::exp(eps * b / (4.0 * nn * c * c)) +
         2.0 * nn * root;
  }
  return v;
}

double kutin_weak_tail(std::size_t n, double eps, double b, double c,
                       double delta) {
  const double shown = kutin_weak_displayed(n, eps, b, c, delta);
  if (delta == 0.0) return shown;
  return running_minimum(
      [=](double e) { return kutin_weak_displayed(n, e, b, c, delta); }, eps);
}

double expectation_from_tail(double c, double k) {
  require(c >= 1.0, "expectation_from_tail: C must be >= 1");
  require(k > 0.0, "expectation_from_tail: K must be > 0");
  return std::sqrt((std::log(c) + 2.0) / k);
}

double heuristic_delta(std::size_t n, double p, double c0) {
  require(p >= 0.0 && p <= 1.0, "heuristic_delta: p outside [0, 1]");
  require(c0 >= 0.0, "heuristic_delta: c0 must be >= 0");
  return c0 * p * std::exp(-static_cast<double>(n) * (1.0 - p));
}

}  // namespace stabcv
