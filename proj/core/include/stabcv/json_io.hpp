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

// JSON forms of configuration blocks and reports.
//
// Parsers are strict: unknown keys, missing required keys and values of the
// wrong type raise ConfigError with the JSON path of the offending value.

#ifndef STABCV_JSON_IO_HPP_
#define STABCV_JSON_IO_HPP_

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stabcv/bounds.hpp"
#include "stabcv/error.hpp"
#include "stabcv/estimation.hpp"
#include "stabcv/experiments.hpp"
#include "stabcv/laws.hpp"
#include "stabcv/learners.hpp"
#include "stabcv/predictor.hpp"
#include "stabcv/resampling.hpp"
#include "stabcv/stability.hpp"

namespace stabcv {

class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : InvalidArgument(path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Throws ConfigError if `j` is not an object or has a key outside `allowed`.
void check_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                const std::string& path);

// Typed accessors for config objects. Errors name the JSON path, written as
// "$.a.b[2]".
std::string json_child(const std::string& path, std::string_view key);
std::string json_index(const std::string& path, std::size_t i);
const nlohmann::json& require_key(const nlohmann::json& j, std::string_view key,
                                  const std::string& path);
double number_at(const nlohmann::json& v, const std::string& path);
std::size_t size_at(const nlohmann::json& v, const std::string& path);
std::string string_at(const nlohmann::json& v, const std::string& path);
std::vector<double> numbers_at(const nlohmann::json& v, const std::string& path);
double number_or(const nlohmann::json& j, std::string_view key, double fallback,
                 const std::string& path);
std::size_t size_or(const nlohmann::json& j, std::string_view key,
                    std::size_t fallback, const std::string& path);
bool bool_or(const nlohmann::json& j, std::string_view key, bool fallback,
             const std::string& path);

// {"kind": "zero-one"} or {"kind": "squared-clipped", "M": 4}
LossKind loss_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json loss_to_json(const LossKind& loss);

// {"learner": "knn"|"regnet"|"erm"|"adaboost"|"lasso"|"constant", params...,
//  "loss": {...}}
Learner learner_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json learner_to_json(const Learner& learner);

// {"kind": "discrete", "atoms": [{"x": [...], "y": 1, "prob": 0.5}, ...]}
// {"kind": "gaussian-regression", "slope": [...], "intercept": 0,
//  "sigma": 0.1, "x_law": "uniform"|"normal", "lo": 0, "hi": 1}
// {"kind": "two-class-gaussian", "mean0": [...], "mean1": [...],
//  "sigma": 1, "prior_one": 0.5}
SyntheticDistribution law_from_json(const nlohmann::json& j,
                                    const std::string& path);
nlohmann::json law_to_json(const SyntheticDistribution& law);

// {"kind": "loo"|"kfold"|"holdout"|"lnu"|"lnu-mc", "k", "nu", "draws",
//  "mask", "cap"}; n comes from the surrounding config.
ResamplingScheme scheme_spec_from_json(const nlohmann::json& j,
                                       std::size_t n, std::uint64_t seed,
                                       const std::string& path);

nlohmann::json profile_to_json(const StabilityProfile& profile);
StabilityProfile profile_from_json(const nlohmann::json& j,
                                   const std::string& path);

nlohmann::json tail_bound_to_json(const TailBound& bound);
nlohmann::json error_triple_to_json(const ErrorTriple& triple);
nlohmann::json profile_estimate_to_json(const ProfileEstimate& estimate);
nlohmann::json concentration_report_to_json(const ConcentrationReport& report);
nlohmann::json split_report_to_json(const SplitReport& report);
nlohmann::json audit_report_to_json(const AuditReport& report);

// eps,shift,emp_freq,emp_lcl,emp_ucl,bound_raw,bound_clipped,verdict
std::string concentration_csv(const ConcentrationReport& report);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace stabcv

#endif  // STABCV_JSON_IO_HPP_
