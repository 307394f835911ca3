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


#include "stabcv/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "stabcv/error.hpp"
#include "stabcv/parallel.hpp"
#include "stabcv/random.hpp"
#include "stabcv/stats.hpp"

namespace stabcv {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Test-row mean loss of one fold given predictions on its test rows.
double fold_mean(const LearningSet& data, const BinaryVector& train,
                 std::span<const double> predictions, const LossKind& loss) {
  std::vector<double> losses;
  losses.reserve(predictions.size());
  std::size_t t = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!train[i]) losses.push_back(loss(data[i].y, predictions[t++]));
  }
  return pairwise_sum(losses) / static_cast<double>(losses.size());
}

std::vector<double> fold_means(const Learner& learner, const LearningSet& data,
                               std::span<const WeightedMask> masks,
                               const CvOptions& options) {
  std::vector<double> means(masks.size());
  if (options.closed_form) {
    auto held_out = learner.held_out_predictions(data, masks);
    if (held_out) {
      for (std::size_t f = 0; f < masks.size(); ++f) {
        means[f] = fold_mean(data, masks[f].train, (*held_out)[f],
                             learner.loss());
      }
      return means;
    }
  }
  parallel_for(masks.size(), options.workers, [&](std::size_t f) {
    try {
      const BinaryVector& train = masks[f].train;
      const Predictor fitted = learner.fit(data.subset(train));
      std::vector<double> preds;
      preds.reserve(data.size() - train.count());
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (!train[i]) preds.push_back(fitted.predict(data[i]));
      }
      means[f] = fold_mean(data, train, preds, learner.loss());
    } catch (const FoldError&) {
      throw;
    } catch (const std::exception& e) {
      throw FoldError(f, e.what());
    }
  });
  return means;
}

double weighted_total(std::span<const WeightedMask> masks,
                      std::span<const double> means) {
  std::vector<double> terms(masks.size());
  for (std::size_t f = 0; f < masks.size(); ++f) {
    terms[f] = masks[f].probability * means[f];
  }
  return clamp01(pairwise_sum(terms));
}

void check_size(const ResamplingScheme& scheme, const LearningSet& data) {
  if (scheme.n() != data.size()) {
    throw InvalidArgument("cv_estimate: scheme built for n=" +
                          std::to_string(scheme.n()) + " but data has " +
                          std::to_string(data.size()) + " rows");
  }
}

}  // namespace

double cv_estimate(const Learner& learner, const LearningSet& data,
                   const ResamplingScheme& scheme, const CvOptions& options) {
  check_size(scheme, data);
  const auto& masks = scheme.support();
  return weighted_total(masks, fold_means(learner, data, masks, options));
}

std::vector<double> cv_estimates(
    const Learner& learner, const LearningSet& data,
    std::span<const ResamplingScheme* const> schemes,
    const CvOptions& options) {
  std::vector<WeightedMask> all;
  for (const ResamplingScheme* s : schemes) {
    check_size(*s, data);
    all.insert(all.end(), s->support().begin(), s->support().end());
  }
  const std::vector<double> means = fold_means(learner, data, all, options);
  std::vector<double> out;
  std::size_t offset = 0;
  for (const ResamplingScheme* s : schemes) {
    const std::size_t k = s->kappa();
    out.push_back(weighted_total(s->support(),
                                 std::span(means).subspan(offset, k)));
    offset += k;
  }
  return out;
}

double resub_estimate(const Predictor& fitted, const LearningSet& data) {
  if (data.empty()) throw InvalidArgument("resub_estimate: empty data");
  std::vector<double> losses(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    losses[i] = fitted.eval_loss(data[i]);
  }
  return clamp01(pairwise_sum(losses) / static_cast<double>(data.size()));
}

double resub_estimate(const Learner& learner, const LearningSet& data) {
  if (data.empty()) throw InvalidArgument("resub_estimate: empty data");
  return resub_estimate(learner.fit(data), data);
}

RiskEstimate oracle_risk(const Predictor& predictor,
                         const SyntheticDistribution& law,
                         std::optional<std::size_t> mc_draws,
                         std::uint64_t seed) {
  RiskEstimate out;
  if (!mc_draws) {
    if (!law.is_discrete()) {
      throw InvalidArgument(
          "oracle_risk: a continuous law needs a Monte Carlo draw count");
    }
    std::vector<double> terms;
    const Predictor* const one[] = {&predictor};
    for (const Atom& atom : law.atoms()) {
      Example z{atom.x, atom.y, 0.5};
      for (const TiebreakCell& cell : tiebreak_cells(one, atom.x)) {
        z.u = cell.u;
        terms.push_back(atom.prob * cell.weight * predictor.eval_loss(z));
      }
    }
    out.value = clamp01(pairwise_sum(terms));
    out.exact = true;
    return out;
  }
  if (*mc_draws < 2) throw InvalidArgument("oracle_risk: need >= 2 draws");
  Rng rng = make_stream(seed, 0, StreamTag::kOracle);
  std::vector<double> losses(*mc_draws);
  for (double& l : losses) l = predictor.eval_loss(law.draw(rng));
  const MeanEstimate m = mean_with_stderr(losses);
  out.value = clamp01(m.mean);
  out.std_error = m.std_error;
  return out;
}

ErrorTriple error_triple(const Learner& learner, const LearningSet& data,
                         const ResamplingScheme& scheme,
                         const SyntheticDistribution& law,
                         std::optional<std::size_t> mc_draws,
                         std::uint64_t seed, const CvOptions& options) {
  if (!law.is_discrete() && !mc_draws) mc_draws = kDefaultOracleDraws;
  ErrorTriple t;
  t.r_cv = cv_estimate(learner, data, scheme, options);
  const Predictor full = learner.fit(data);
  const RiskEstimate risk = oracle_risk(full, law, mc_draws, seed);
  t.r_tilde = risk.value;
  t.r_tilde_stderr = risk.std_error;
  t.r_hat = resub_estimate(full, data);
  t.gap = std::abs(t.r_cv - t.r_tilde);
  return t;
}

}  // namespace stabcv
