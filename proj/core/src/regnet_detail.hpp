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


// Internal helpers shared by the kernel ridge learner and its tests of the
// closed-form held-out predictions. Not installed.

#ifndef STABCV_REGNET_DETAIL_HPP_
#define STABCV_REGNET_DETAIL_HPP_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "stabcv/data.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/resampling.hpp"

namespace stabcv::detail {

Eigen::MatrixXd gram_matrix(const LearningSet& data, const Kernel& kernel);

std::vector<std::vector<double>> regnet_held_out(
    const LearningSet& data, const Kernel& kernel, double lambda_reg,
    std::span<const WeightedMask> masks);

}  // namespace stabcv::detail

#endif  // STABCV_REGNET_DETAIL_HPP_
