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

// Closed-form tail and expectation bounds.
//
// Notation shared by the stability-based tails: n sample size, p test
// fraction, (lambda, alpha, delta) the stability profile, eps the deviation
// beyond the threshold shift. Every tail bound bounds
//
//   Pr(|R_cv - R_tilde| >= eps + threshold_shift)
//
// and is reported raw: values at or above 1 are kept and flagged vacuous.
//
//   evaluator                       shift                raw
//   generic_stability_tail          lambda (2p)^alpha    2 exp(-2 n p eps^2) + m delta
//   uniform_stability_tail_strong   delta + same         4(exp(-eps^2 / (8n(c + a')^2)) + (n/a') delta')
//   uniform_stability_tail_weak     delta + same         4(exp(...) + (2n sqrt(delta')/c) exp(eps/(4c^2)) + n sqrt(delta'))
//   holdout_uniform_tail            delta + same         4(exp(-eps^2 / (8 h^2)) + (n^2/h) delta')
//
// with c = 5 lambda (2p)^alpha and h = 4 lambda (2p)^alpha + 1/(np).

#ifndef STABCV_BOUNDS_HPP_
#define STABCV_BOUNDS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stabcv {

struct TailBound {
  double threshold_shift = 0.0;
  double raw = 0.0;
  double clipped = 0.0;  // min(raw, 1)
  bool vacuous = false;  // raw >= 1
  // Value of the formula exactly as displayed at eps. Equal to raw except
  // for the weak (Kutin-type) tails, whose raw value is the running minimum
  // of the display over (0, eps].
  double displayed = 0.0;
  std::vector<std::pair<std::string, double>> inputs;
};

TailBound make_tail(double shift, double raw,
                    std::vector<std::pair<std::string, double>> inputs,
                    std::optional<double> displayed = std::nullopt);

struct VcOptions {
  // Use ln(2n(1 - p) + 1) in the second branch of V instead of the default
  // ln(2(1 - p) + 1).
  bool log_argument_with_n = false;
};

// ERM baseline B(n, p, eps) + V(n, p, eps) with
//   B = 5 (2n(1-p) + 1)^(4 V_C / (1-p)) exp(-n eps^2 / 64)
//   V = min(exp(-2 n p eps^2 / 25),
//           (16 / eps) sqrt(V_C (ln(2(1-p) + 1) + 4) / (n (1-p)))).
// Shift is 0.
TailBound vc_baseline(std::size_t n, double p, double eps, double vc_dim,
                      const VcOptions& options = {});

struct VcTerms {
  double b = 0.0;
  double v_first = 0.0;   // exp(-2 n p eps^2 / 25)
  double v_second = 0.0;  // (16 / eps) sqrt(...)
};

VcTerms vc_terms(std::size_t n, double p, double eps, double vc_dim,
                 const VcOptions& options = {});

// `multiplier` is 1 for the cv kinds and kappa(n) for per-vector stability.
TailBound generic_stability_tail(std::size_t n, double p, double eps,
                                 double lambda, double alpha, double delta,
                                 double multiplier = 1.0);

// delta' = delta + (n + 1) delta_loo_next. Without alpha_prime the
// specialization a' = c is used, evaluated with the same expression order as
// the general form so both agree bit for bit. Throws InvalidArgument when
// lambda == 0 and no alpha_prime is given.
TailBound uniform_stability_tail_strong(
    std::size_t n, double p, double eps, double lambda, double alpha,
    double delta, double delta_loo_next,
    std::optional<double> alpha_prime = std::nullopt);

// delta_prime is supplied directly (e.g. 2 delta_{n,1/n} + delta). Throws
// InvalidArgument when lambda == 0.
TailBound uniform_stability_tail_weak(std::size_t n, double p, double eps,
                                      double lambda, double alpha,
                                      double delta, double delta_prime);

struct HoldoutOptions {
  // Put n inside the exponent denominator, matching the leave-one-out tails.
  bool exponent_with_n = false;
};

// delta' = delta + n delta_loo.
TailBound holdout_uniform_tail(std::size_t n, double p, double eps,
                               double lambda, double alpha, double delta,
                               double delta_loo,
                               const HoldoutOptions& options = {});

enum class L1Kind { kWeakGeneral, kStrongUniform };

std::string_view to_string(L1Kind kind) noexcept;
L1Kind l1_kind_from_string(std::string_view name);

// Bound on E|R_cv - R_tilde| (alpha = 1):
//   weak-general    2 lambda p + sqrt(2 / (n p)) + delta
//   strong-uniform  delta + 2 lambda p + 51 lambda sqrt(n) p
//                   + (n / (9 lambda p)) delta'
double l1_bound(L1Kind kind, std::size_t n, double p, double lambda,
                double delta, double delta_prime = 0.0);

struct SplitRule {
  double p_star = 0.0;
  double objective = 0.0;  // 4 lambda p + sqrt(2/(np)) for weak-general
  bool interior = false;   // p_star not clamped
};

// weak-general: minimizer (1/(4 sqrt(2) lambda))^(2/3) n^(-1/3) of
// 4 lambda p + sqrt(2/(np)), clamped to [1/n, 1/2]. strong-uniform: 1/n.
SplitRule optimal_split(L1Kind kind, std::size_t n, double lambda);

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

// Pr(sum X_i - E >= n eps) <= exp(-2 n^2 eps^2 / sum (b_i - a_i)^2).
double hoeffding_tail(std::size_t n, double eps, std::span<const Range> ranges);
// Same with every X_i in a range of width `width`.
double hoeffding_tail(std::size_t n, double eps, double width);

// exp(-2 eps^2 / sum c_i^2).
double mcdiarmid_tail(double eps, std::span<const double> c);

// 2(exp(-tau^2 / (8n(c + b a')^2)) + (n / a') delta).
double kutin_strong_tail(std::size_t n, double tau, double b, double c,
                         double delta, double alpha_prime);

// 2 exp(-eps^2 / (10 n c^2 (1 + 2 eps/(15 n c))^2))
//   + (2 n b sqrt(delta) / c) exp(eps b / (4 n c^2)) + 2 n sqrt(delta),
// exactly as displayed.
double kutin_weak_displayed(std::size_t n, double eps, double b, double c,
                            double delta);
// Running minimum of kutin_weak_displayed over (0, eps]; also a valid bound
// at eps, and nonincreasing in eps.
double kutin_weak_tail(std::size_t n, double eps, double b, double c,
                       double delta);

// sqrt((ln C + 2) / K), a bound on E X when Pr(X >= eps) <= C exp(-K eps^2).
double expectation_from_tail(double c, double k);

// c0 p exp(-n (1 - p)).
double heuristic_delta(std::size_t n, double p, double c0 = 1.0);

// Running minimum over (0, eps] of a function f of eps. Local minima are
// located on a fixed logarithmic grid and refined by golden-section search,
// so the result depends on eps only through which minima precede it.
double running_minimum(const std::function<double(double)>& f, double eps);

}  // namespace stabcv

#endif  // STABCV_BOUNDS_HPP_
