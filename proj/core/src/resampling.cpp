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


#include "stabcv/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "stabcv/error.hpp"
#include "stabcv/random.hpp"
#include "stabcv/stats.hpp"

namespace stabcv {

BinaryVector::BinaryVector(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) throw InvalidArgument("BinaryVector: entries must be 0 or 1");
    count_ += b;
  }
  if (count_ == 0) {
    throw InvalidArgument("BinaryVector: at least one entry must be 1");
  }
}

BinaryVector BinaryVector::ones(std::size_t n) {
  return BinaryVector(std::vector<std::uint8_t>(n, 1));
}

BinaryVector BinaryVector::without(std::size_t n,
                                   std::span<const std::size_t> test_indices) {
  std::vector<std::uint8_t> bits(n, 1);
  for (std::size_t i : test_indices) {
    if (i >= n) throw InvalidArgument("BinaryVector: test index out of range");
    if (bits[i] == 0) {
      throw InvalidArgument("BinaryVector: repeated test index " +
                            std::to_string(i));
    }
    bits[i] = 0;
  }
  return BinaryVector(std::move(bits));
}

BinaryVector BinaryVector::complement() const {
  if (count_ == bits_.size()) {
    throw InvalidArgument("BinaryVector: complement of 1_n is empty");
  }
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = 1 - bits_[i];
  return BinaryVector(std::move(out));
}

std::vector<std::size_t> BinaryVector::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

WeightedEmpiricalMeasure::WeightedEmpiricalMeasure(const BinaryVector& v)
    : masses_(v.size(), 0.0) {
  const double mass = 1.0 / static_cast<double>(v.count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) masses_[i] = mass;
  }
}

double total_variation(const BinaryVector& u, const BinaryVector& v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("total_variation: length mismatch (" +
                          std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
  }
  // |U_i / sU - V_i / sV| = |U_i sV - V_i sU| / (sU sV)
  const auto su = static_cast<std::int64_t>(u.count());
  const auto sv = static_cast<std::int64_t>(v.count());
  std::int64_t num = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += std::llabs(static_cast<std::int64_t>(u[i]) * sv -
                      static_cast<std::int64_t>(v[i]) * su);
  }
  return static_cast<double>(num) / static_cast<double>(su * sv);
}

std::string_view to_string(SchemeKind kind) noexcept {
  switch (kind) {
    case SchemeKind::kLeaveOneOut:
      return "loo";
    case SchemeKind::kKFold:
      return "kfold";
    case SchemeKind::kHoldOut:
      return "holdout";
    case SchemeKind::kLeaveNuOut:
      return "lnu";
    case SchemeKind::kLeaveNuOutMonteCarlo:
      return "lnu-mc";
  }
  return "unknown";
}

SchemeKind scheme_kind_from_string(std::string_view name) {
  for (SchemeKind k :
       {SchemeKind::kLeaveOneOut, SchemeKind::kKFold, SchemeKind::kHoldOut,
        SchemeKind::kLeaveNuOut, SchemeKind::kLeaveNuOutMonteCarlo}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown scheme kind '" + std::string(name) +
                        "' (expected loo, kfold, holdout, lnu or lnu-mc)");
}

namespace {

void push_uniform(std::vector<WeightedMask>& support,
                  std::vector<BinaryVector> masks) {
  const double prob = 1.0 / static_cast<double>(masks.size());
  support.reserve(masks.size());
  for (auto& m : masks) support.push_back({std::move(m), prob});
}

// All nu-subsets of {0..n-1} in lexicographic order, as training masks.
std::vector<BinaryVector> enumerate_leave_out(std::size_t n, std::size_t nu) {
  std::vector<BinaryVector> out;
  std::vector<std::size_t> idx(nu);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    out.push_back(BinaryVector::without(n, idx));
    std::size_t i = nu;
    while (i > 0 && idx[i - 1] == n - nu + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < nu; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

ResamplingScheme build_scheme(std::size_t n, SchemeKind kind,
                              const SchemeParams& params,
                              std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("build_scheme: n must be at least 2");

  ResamplingScheme s;
  s.n_ = n;
  s.kind_ = kind;
  s.params_ = params;
  s.seed_ = seed;

  std::size_t test = 0;
  std::vector<BinaryVector> masks;
  switch (kind) {
    case SchemeKind::kLeaveOneOut:
      test = 1;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx[] = {i};
        masks.push_back(BinaryVector::without(n, idx));
      }
      break;

    case SchemeKind::kKFold: {
      const std::size_t k = params.k;
      if (k < 2 || k > n) {
        throw InvalidArgument("build_scheme: k-fold needs 2 <= k <= n, got k=" +
                              std::to_string(k));
      }
      if (n % k != 0) {
        throw InvalidArgument("build_scheme: k=" + std::to_string(k) +
                              " does not divide n=" + std::to_string(n));
      }
      test = n / k;
      for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> idx(test);
        std::iota(idx.begin(), idx.end(), f * test);
        masks.push_back(BinaryVector::without(n, idx));
      }
      break;
    }

    case SchemeKind::kHoldOut: {
      if (params.holdout_mask.size() != n) {
        throw InvalidArgument("build_scheme: hold-out mask has length " +
                              std::to_string(params.holdout_mask.size()) +
                              ", expected " + std::to_string(n));
      }
      BinaryVector mask(params.holdout_mask);
      if (mask.count() == n) {
        throw InvalidArgument("build_scheme: hold-out mask has no test row");
      }
      test = n - mask.count();
      masks.push_back(std::move(mask));
      break;
    }

    case SchemeKind::kLeaveNuOut: {
      const std::size_t nu = params.nu;
      if (nu < 1 || nu >= n) {
        throw InvalidArgument("build_scheme: leave-nu-out needs 1 <= nu < n");
      }
      const double size = binomial_coefficient(n, nu);
      if (size > params.support_cap) {
        throw SupportTooLarge(
            "build_scheme: C(" + std::to_string(n) + ", " + std::to_string(nu) +
                ") exceeds the support cap; use lnu-mc (Monte Carlo) instead",
            size, params.support_cap);
      }
      test = nu;
      masks = enumerate_leave_out(n, nu);
      break;
    }

    case SchemeKind::kLeaveNuOutMonteCarlo: {
      const std::size_t nu = params.nu;
      if (nu < 1 || nu >= n) {
        throw InvalidArgument("build_scheme: leave-nu-out needs 1 <= nu < n");
      }
      if (params.draws < 1) {
        throw InvalidArgument("build_scheme: Monte Carlo needs draws >= 1");
      }
      test = nu;
      Rng rng = make_stream(seed, 0, StreamTag::kScheme);
      std::vector<std::size_t> perm(n);
      masks.reserve(params.draws);
      for (std::size_t d = 0; d < params.draws; ++d) {
        std::iota(perm.begin(), perm.end(), 0);
        // Partial Fisher-Yates: the first nu slots are a uniform subset.
        for (std::size_t i = 0; i < nu; ++i) {
          const std::size_t j =
              i + static_cast<std::size_t>(uniform01(rng) *
                                           static_cast<double>(n - i));
          std::swap(perm[i], perm[std::min(j, n - 1)]);
        }
        masks.push_back(
            BinaryVector::without(n, std::span(perm).first(nu)));
      }
      break;
    }
  }

  s.train_size_ = n - test;
  s.p_ = static_cast<double>(test) / static_cast<double>(n);
  push_uniform(s.support_, std::move(masks));
  return s;
}

InclusionProfile scheme_symmetry_check(const ResamplingScheme& scheme) {
  InclusionProfile out;
  out.train_probability.assign(scheme.n(), 0.0);
  for (const auto& wm : scheme.support()) {
    for (std::size_t i = 0; i < scheme.n(); ++i) {
      if (wm.train[i]) out.train_probability[i] += wm.probability;
    }
  }
  const auto [lo, hi] = std::minmax_element(out.train_probability.begin(),
                                            out.train_probability.end());
  out.symmetric = (*hi - *lo) <= 1e-12;
  return out;
}

double feasible_test_fraction(double p, std::size_t n) {
  if (n < 2) throw InvalidArgument("feasible_test_fraction: n < 2");
  const double target = std::floor(p * static_cast<double>(n) + 0.5);
  const double nu =
      std::clamp(target, 1.0, static_cast<double>(n - 1));
  return nu / static_cast<double>(n);
}

nlohmann::json scheme_to_json(const ResamplingScheme& scheme) {
  const SchemeParams& pr = scheme.params();
  nlohmann::json params = {{"support_cap", pr.support_cap}};
  switch (scheme.kind()) {
    case SchemeKind::kKFold:
      params["k"] = pr.k;
      break;
    case SchemeKind::kHoldOut:
      params["holdout_mask"] = pr.holdout_mask;
      break;
    case SchemeKind::kLeaveNuOut:
      params["nu"] = pr.nu;
      break;
    case SchemeKind::kLeaveNuOutMonteCarlo:
      params["nu"] = pr.nu;
      params["draws"] = pr.draws;
      break;
    case SchemeKind::kLeaveOneOut:
      break;
  }
  nlohmann::json j = {{"n", scheme.n()},
                      {"p", scheme.p()},
                      {"kind", std::string(to_string(scheme.kind()))},
                      {"params", params},
                      {"seed", scheme.seed()}};
  const bool omit = scheme.monte_carlo() &&
                    static_cast<double>(pr.draws) > pr.support_cap;
  if (!omit) {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& wm : scheme.support()) {
      nlohmann::json bits = nlohmann::json::array();
      for (std::uint8_t b : wm.train.bits()) bits.push_back(int{b});
      support.push_back(nlohmann::json::array({bits, wm.probability}));
    }
    j["support"] = std::move(support);
  }
  return j;
}

ResamplingScheme scheme_from_json(const nlohmann::json& j) {
  try {
    SchemeParams params;
    const auto& pj = j.at("params");
    if (pj.contains("k")) params.k = pj.at("k").get<std::size_t>();
    if (pj.contains("nu")) params.nu = pj.at("nu").get<std::size_t>();
    if (pj.contains("draws")) params.draws = pj.at("draws").get<std::size_t>();
    if (pj.contains("holdout_mask")) {
      params.holdout_mask =
          pj.at("holdout_mask").get<std::vector<std::uint8_t>>();
    }
    if (pj.contains("support_cap")) {
      params.support_cap = pj.at("support_cap").get<double>();
    }
    ResamplingScheme s =
        build_scheme(j.at("n").get<std::size_t>(),
                     scheme_kind_from_string(j.at("kind").get<std::string>()),
                     params, j.value("seed", std::uint64_t{0}));
    if (j.contains("support")) {
      const auto& sj = j.at("support");
      bool same = sj.size() == s.kappa();
      for (std::size_t i = 0; same && i < sj.size(); ++i) {
        const auto bits = sj.at(i).at(0).get<std::vector<std::uint8_t>>();
        same = BinaryVector(bits) == s.support()[i].train;
      }
      if (!same) {
        throw InvalidArgument(
            "scheme_from_json: stored support does not match the parameters");
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("scheme_from_json: ") + e.what());
  }
}

}  // namespace stabcv
