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


#include "stabcv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stabcv/error.hpp"
#include "stabcv/parallel.hpp"
#include "stabcv/random.hpp"

namespace stabcv {

std::string_view to_string(StabilityKind kind) noexcept {
  switch (kind) {
    case StabilityKind::kWeak: return "weak";
    case StabilityKind::kStrong: return "strong";
    case StabilityKind::kCvWeak: return "cv-weak";
    case StabilityKind::kCvStrong: return "cv-strong";
    case StabilityKind::kSure: return "sure";
  }
  return "weak";
}

std::string_view to_string(Distance distance) noexcept {
  switch (distance) {
    case Distance::kSup: return "d_inf";
    case Distance::kL1: return "d_1";
    case Distance::kExpectation: return "d_e";
  }
  return "d_inf";
}

std::string_view to_string(Provenance provenance) noexcept {
  return provenance == Provenance::kCertified ? "certified" : "estimated";
}

StabilityKind stability_kind_from_string(std::string_view name) {
  for (auto k : {StabilityKind::kWeak, StabilityKind::kStrong,
                 StabilityKind::kCvWeak, StabilityKind::kCvStrong,
                 StabilityKind::kSure}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown stability kind '" + std::string(name) + "'");
}

Distance distance_from_string(std::string_view name) {
  for (auto d : {Distance::kSup, Distance::kL1, Distance::kExpectation}) {
    if (name == to_string(d)) return d;
  }
  throw InvalidArgument("unknown distance '" + std::string(name) + "'");
}

bool is_cv_kind(StabilityKind kind) noexcept {
  return kind == StabilityKind::kCvWeak || kind == StabilityKind::kCvStrong;
}

bool is_strong_kind(StabilityKind kind) noexcept {
  return kind == StabilityKind::kStrong || kind == StabilityKind::kCvStrong;
}

void validate(const StabilityProfile& profile) {
  if (!(profile.alpha > 0.0 && profile.alpha <= 1.0)) {
    throw InvalidArgument("stability exponent alpha must lie in (0, 1]");
  }
  if (!(profile.lambda >= 0.0) || !std::isfinite(profile.lambda)) {
    throw InvalidArgument("stability lambda must be finite and >= 0");
  }
  if (!(profile.delta >= 0.0 && profile.delta <= 1.0)) {
    throw InvalidArgument("stability delta must lie in [0, 1]");
  }
  if (profile.kind == StabilityKind::kSure && profile.delta != 0.0) {
    throw InvalidArgument("a sure profile must have delta = 0");
  }
}

Reference Reference::discrete(const SyntheticDistribution& law) {
  if (!law.is_discrete()) {
    throw InvalidArgument("Reference::discrete needs a discrete law");
  }
  Reference ref;
  for (const Atom& a : law.atoms()) {
    ref.points_.push_back({a.x, a.y, 0.5});
    ref.weights_.push_back(a.prob);
  }
  ref.tiebreak_ = TieBreak::kIntegrate;
  ref.exact_ = true;
  return ref;
}

Reference Reference::sample(std::vector<Example> points) {
  Reference ref = probes(std::move(points), TieBreak::kStored);
  return ref;
}

Reference Reference::probes(std::vector<Example> points, TieBreak tiebreak) {
  if (points.empty()) throw InvalidArgument("empty reference");
  Reference ref;
  const double w = 1.0 / static_cast<double>(points.size());
  ref.weights_.assign(points.size(), w);
  ref.points_ = std::move(points);
  ref.tiebreak_ = tiebreak;
  return ref;
}

Reference Reference::with_extra_probes(std::span<const Example> extra) const {
  Reference ref = *this;
  ref.points_.insert(ref.points_.end(), extra.begin(), extra.end());
  ref.weights_.insert(ref.weights_.end(), extra.size(), 0.0);
  return ref;
}

namespace {

struct DistanceTriple {
  DistanceValue sup;
  DistanceValue l1;
  DistanceValue expectation;

  const DistanceValue& get(Distance which) const {
    switch (which) {
      case Distance::kSup: return sup;
      case Distance::kL1: return l1;
      case Distance::kExpectation: return expectation;
    }
    return sup;
  }
};

double default_u(const Reference& ref, std::size_t i) {
  return ref.tiebreak() == Reference::TieBreak::kStored ? ref.points()[i].u
                                                        : 0.5;
}

// Losses of p at every reference point with the point's default tie-break.
std::vector<double> cached_losses(const Predictor& p, const Reference& ref) {
  std::vector<double> out(ref.points().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Example z = ref.points()[i];
    z.u = default_u(ref, i);
    out[i] = p.eval_loss(z);
  }
  return out;
}

double sample_stderr(std::span<const double> values, double mean) {
  const std::size_t m = values.size();
  if (m < 2) return 0.0;
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(m - 1) /
                   static_cast<double>(m));
}

// All three distances in one pass. `cache2` optionally holds p2's losses at
// the default tie-breaks (see cached_losses).
DistanceTriple all_distances(const Predictor& p1, const Predictor& p2,
                             const Reference& ref,
                             const std::vector<double>* cache2) {
  const auto points = ref.points();
  const auto weights = ref.weights();
  if (points.empty()) throw InvalidArgument("empty reference");

  double sup = 0.0;
  std::vector<double> abs_terms;
  std::vector<double> signed_terms;
  std::vector<double> abs_values;
  std::vector<double> signed_values;
  abs_terms.reserve(points.size());
  signed_terms.reserve(points.size());
  const Predictor* pair[2] = {&p1, &p2};

  for (std::size_t i = 0; i < points.size(); ++i) {
    double abs_i = 0.0;
    double signed_i = 0.0;
    auto accumulate = [&](double u, double w, bool use_cache) {
      Example z = points[i];
      z.u = u;
      const double l1 = p1.eval_loss(z);
      const double l2 = use_cache ? (*cache2)[i] : p2.eval_loss(z);
      const double diff = l1 - l2;
      sup = std::max(sup, std::abs(diff));
      abs_i += w * std::abs(diff);
      signed_i += w * diff;
    };
    if (ref.tiebreak() == Reference::TieBreak::kStored) {
      accumulate(points[i].u, 1.0, cache2 != nullptr);
    } else {
      const auto cells = tiebreak_cells(pair, points[i].x);
      const bool single = cells.size() == 1;
      for (const TiebreakCell& c : cells) {
        accumulate(c.u, c.weight, single && cache2 != nullptr);
      }
    }
    if (weights[i] > 0.0) {
      abs_terms.push_back(weights[i] * abs_i);
      signed_terms.push_back(weights[i] * signed_i);
      abs_values.push_back(abs_i);
      signed_values.push_back(signed_i);
    }
  }

  DistanceTriple out;
  out.sup.value = sup;
  out.l1.value = pairwise_sum(abs_terms);
  const double signed_mean = pairwise_sum(signed_terms);
  out.expectation.value = std::abs(signed_mean);
  if (!ref.exact()) {
    out.l1.std_error = sample_stderr(abs_values, out.l1.value);
    out.expectation.std_error = sample_stderr(signed_values, signed_mean);
  }
  return out;
}

}  // namespace

DistanceValue dist_between(const Predictor& p1, const Predictor& p2,
                           Distance which, const Reference& ref) {
  return all_distances(p1, p2, ref, nullptr).get(which);
}

std::vector<CurvePoint> survival_curve(std::span<const double> ratios,
                                       std::span<const double> lambda_grid) {
  std::vector<CurvePoint> out;
  out.reserve(lambda_grid.size());
  const double reps = static_cast<double>(ratios.size());
  for (double lambda : lambda_grid) {
    const auto hits = std::count_if(ratios.begin(), ratios.end(),
                                    [&](double r) { return r >= lambda; });
    CurvePoint pt;
    pt.lambda = lambda;
    pt.delta = reps > 0 ? static_cast<double>(hits) / reps : 0.0;
    pt.std_error = reps > 0 ? std::sqrt(pt.delta * (1.0 - pt.delta) / reps) : 0.0;
    out.push_back(pt);
  }
  return out;
}

namespace {

struct ReplicateResult {
  double ratio = 0.0;
  double max_distance = 0.0;
  std::size_t pairs = 0;
  std::size_t ordering_violations = 0;
  std::size_t ceiling_violations = 0;
};

bool ordered(const DistanceTriple& t) {
  const double tol = 1e-12;
  return t.expectation.value <= t.l1.value + tol * (1.0 + t.l1.value) &&
         t.l1.value <= t.sup.value + tol * (1.0 + t.sup.value);
}

Reference profile_reference(const SyntheticDistribution& law,
                            const ProfileOptions& options) {
  if (law.is_discrete()) return Reference::discrete(law);
  if (options.eval_sample == 0) {
    throw InvalidArgument("eval_sample must be positive for continuous laws");
  }
  Rng rng = make_stream(options.seed, 0, StreamTag::kEvalSample);
  std::vector<Example> sample;
  sample.reserve(options.eval_sample);
  for (std::size_t i = 0; i < options.eval_sample; ++i) {
    sample.push_back(law.draw(rng));
  }
  const Reference ref = Reference::sample(std::move(sample));
  if (options.probe_grid == 0) return ref;
  const auto grid = law.probe_grid(options.probe_grid);
  return ref.with_extra_probes(grid);
}

}  // namespace

ProfileEstimate estimate_profile(const Learner& learner,
                                 const ResamplingScheme& scheme,
                                 const SyntheticDistribution& law,
                                 const ProfileOptions& options) {
  if (options.reps < 100) {
    throw InvalidArgument("estimate_profile needs at least 100 replicates");
  }
  if (!(options.alpha > 0.0 && options.alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1]");
  }
  if (options.kind == StabilityKind::kSure) {
    throw InvalidArgument("sure profiles are certified, not estimated");
  }
  for (double d : options.delta_targets) {
    if (!(d > 0.0 && d < 1.0)) {
      throw InvalidArgument("delta targets must lie in (0, 1)");
    }
  }
  const bool cv = is_cv_kind(options.kind);
  const bool strong = is_strong_kind(options.kind);
  if (cv && scheme.kappa() > options.support_cap) {
    throw SupportTooLarge("scheme support for a cv stability profile",
                          static_cast<double>(scheme.kappa()),
                          static_cast<double>(options.support_cap));
  }
  if (strong && options.z_probes.empty() && options.fresh_probes == 0) {
    throw InvalidArgument("strong stability needs z probes");
  }
  const std::size_t n = scheme.n();
  if (strong && n < 2) throw InvalidArgument("strong stability needs n >= 2");

  const Reference ref = profile_reference(law, options);
  const auto& support = scheme.support();
  const std::size_t mask_count = cv ? support.size() : 1;
  const BinaryVector ones = BinaryVector::ones(n);

  std::vector<ReplicateResult> results(options.reps);
  parallel_for(options.reps, options.workers, [&](std::size_t r) {
    Rng data_rng = make_stream(options.seed, r, StreamTag::kData);
    std::vector<LearningSet> samples;
    if (strong) {
      const LearningSet base = law.sample(n - 1, data_rng);
      Rng probe_rng = make_stream(options.seed, r, StreamTag::kProbe);
      for (const Example& z : options.z_probes) {
        samples.push_back(base.with_appended(z));
      }
      for (std::size_t j = 0; j < options.fresh_probes; ++j) {
        samples.push_back(base.with_appended(law.draw(probe_rng)));
      }
    } else {
      samples.push_back(law.sample(n, data_rng));
    }

    ReplicateResult res;
    for (const LearningSet& data : samples) {
      const Predictor full = learner.fit(data);
      const std::vector<double> cache = cached_losses(full, ref);
      for (std::size_t m = 0; m < mask_count; ++m) {
        const BinaryVector& train = support[m].train;
        const Predictor sub = learner.fit(data.subset(train));
        const DistanceTriple t = all_distances(sub, full, ref, &cache);
        const double d = t.get(options.distance).value;
        ++res.pairs;
        if (!ordered(t)) ++res.ordering_violations;
        if (options.distance_ceiling && d > *options.distance_ceiling) {
          ++res.ceiling_violations;
        }
        res.max_distance = std::max(res.max_distance, d);
        if (d > 0.0) {
          const double tv = total_variation(train, ones);
          res.ratio = std::max(res.ratio, d / std::pow(tv, options.alpha));
        }
      }
    }
    results[r] = res;
  });

  ProfileEstimate est;
  est.ratios.reserve(options.reps);
  for (const ReplicateResult& res : results) {
    est.ratios.push_back(res.ratio);
    est.max_distance = std::max(est.max_distance, res.max_distance);
    est.pairs_evaluated += res.pairs;
    est.ordering_violations += res.ordering_violations;
    est.ceiling_violations += res.ceiling_violations;
  }

  std::vector<double> sorted = est.ratios;
  std::sort(sorted.begin(), sorted.end());
  const double max_ratio = sorted.back();

  std::vector<double> grid = options.lambda_grid;
  if (grid.empty()) {
    grid = linspace(0.0, max_ratio > 0.0 ? 1.25 * max_ratio : 1.0, 41);
  }
  est.curve = survival_curve(est.ratios, grid);

  for (double target : options.delta_targets) {
    LambdaAtDelta lad;
    lad.delta = target;
    lad.lambda = empirical_quantile(sorted, 1.0 - target);
    const auto above = static_cast<std::size_t>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), lad.lambda));
    lad.achieved = wilson_interval(above, options.reps, options.wilson_z);
    est.lambda_at_delta.push_back(lad);
  }

  est.profile.kind = options.kind;
  est.profile.distance = options.distance;
  est.profile.alpha = options.alpha;
  est.profile.provenance = Provenance::kEstimated;
  est.profile.reps = options.reps;
  est.profile.seed = options.seed;
  if (!est.lambda_at_delta.empty()) {
    est.profile.lambda = est.lambda_at_delta.front().lambda;
    est.profile.delta = est.lambda_at_delta.front().achieved.point;
  } else {
    est.profile.lambda = max_ratio;
    est.profile.delta = 0.0;
  }
  return est;
}

StabilityProfile certificate_regnet(double loss_bound, double kappa,
                                    std::size_t n, double lambda_reg) {
  if (!(loss_bound > 0.0) || !(kappa > 0.0) || n == 0 || !(lambda_reg > 0.0)) {
    throw InvalidArgument("certificate_regnet needs M, kappa, n, lambda > 0");
  }
  StabilityProfile p;
  p.kind = StabilityKind::kSure;
  p.distance = Distance::kSup;
  p.alpha = 1.0;
  p.lambda = 4.0 * loss_bound * kappa * kappa /
             (static_cast<double>(n) * lambda_reg);
  p.delta = 0.0;
  p.provenance = Provenance::kCertified;
  return p;
}

KnnTail certificate_knn_tail(std::size_t n, std::size_t k, std::size_t d,
                             double eps) {
  if (n < 2 || k == 0 || d == 0) {
    throw InvalidArgument("certificate_knn_tail needs n >= 2, k >= 1, d >= 1");
  }
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be >= 0");
  const double gamma = std::pow(3.0, static_cast<double>(d)) - 1.0;
  const double exponent = static_cast<double>(n - 1) * eps * eps * eps /
                          (54.0 * static_cast<double>(k) * (gamma + 2.0));
  KnnTail out;
  out.raw = 6.0 * std::exp(-exponent);
  out.vacuous = out.raw >= 1.0;
  return out;
}

}  // namespace stabcv
