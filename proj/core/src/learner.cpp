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


#include <string>
#include <type_traits>

#include "regnet_detail.hpp"
#include "stabcv/error.hpp"
#include "stabcv/learners.hpp"

namespace stabcv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Learner::Learner(LearnerSpec spec, LossKind loss)
    : spec_(std::move(spec)), loss_(loss) {
  std::visit(
      Overloaded{
          [](const KnnSpec& s) {
            if (s.k < 1) throw InvalidArgument("knn: k must be >= 1");
          },
          [](const RegnetSpec& s) {
            if (!(s.lambda_reg > 0.0)) {
              throw InvalidArgument("regnet: lambda_reg must be positive");
            }
            if (s.kernel.kind == Kernel::Kind::kGaussian &&
                !(s.kernel.gamma > 0.0)) {
              throw InvalidArgument("regnet: gaussian gamma must be positive");
            }
          },
          [](const ErmSpec& s) {
            if (s.hypotheses.empty()) {
              throw InvalidArgument("erm: empty hypothesis list");
            }
            for (const auto& h : s.hypotheses) {
              if (!h) throw InvalidArgument("erm: null hypothesis");
            }
          },
          [](const AdaboostSpec& s) {
            if (s.rounds < 1) throw InvalidArgument("adaboost: T must be >= 1");
          },
          [](const LassoSpec& s) {
            if (s.dictionary.empty()) {
              throw InvalidArgument("lasso: empty dictionary");
            }
            if (!(s.tuning_constant > 0.0)) {
              throw InvalidArgument("lasso: A must be positive");
            }
          },
          [](const ConstantSpec&) {},
      },
      spec_);
}

Predictor Learner::fit(const LearningSet& train) const {
  return std::visit(
      Overloaded{
          [&](const KnnSpec& s) { return fit_knn(train, s.k, s.task, loss_); },
          [&](const RegnetSpec& s) {
            return fit_regnet(train, s.kernel, s.lambda_reg, loss_);
          },
          [&](const ErmSpec& s) {
            std::vector<Predictor> hs;
            hs.reserve(s.hypotheses.size());
            for (const auto& h : s.hypotheses) hs.emplace_back(h, loss_);
            return fit_erm_finite(train, hs);
          },
          [&](const AdaboostSpec& s) {
            AdaboostFit fit = fit_adaboost(train, fit_weighted_stump, s.rounds);
            return Predictor(fit.predictor.shared_model(), loss_);
          },
          [&](const LassoSpec& s) {
            return fit_lasso(train, s.dictionary, s.tuning_constant, loss_,
                             s.options)
                .predictor;
          },
          [&](const ConstantSpec& s) {
            return fit_constant(train, s.value, loss_);
          },
      },
      spec_);
}

std::optional<std::vector<std::vector<double>>> Learner::held_out_predictions(
    const LearningSet& data, std::span<const WeightedMask> masks) const {
  if (const auto* s = std::get_if<RegnetSpec>(&spec_)) {
    return detail::regnet_held_out(data, s->kernel, s->lambda_reg, masks);
  }
  return std::nullopt;
}

std::string_view Learner::name() const noexcept {
  return std::visit(Overloaded{
                        [](const KnnSpec&) { return "knn"; },
                        [](const RegnetSpec&) { return "regnet"; },
                        [](const ErmSpec&) { return "erm"; },
                        [](const AdaboostSpec&) { return "adaboost"; },
                        [](const LassoSpec&) { return "lasso"; },
                        [](const ConstantSpec&) { return "constant"; },
                    },
                    spec_);
}

}  // namespace stabcv
