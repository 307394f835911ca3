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


// Command-line front end: subcommand dispatch, config parsing and report
// output. Kept in a library so tests can drive it in-process.

#ifndef STABCV_TOOLS_CLI_HPP_
#define STABCV_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace stabcv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFail = 2;

// args[0] is the program name. Reports go to `out` (or to --out files),
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Two-line CSV (header and values) for `bounds eval`:
//   formula,<inputs>,shift,raw,clipped,vacuous   for tail probabilities
//   formula,<inputs>,value                       for other quantities
// Throws ConfigError for unknown formulas or parameters.
std::string eval_formula(std::string_view formula, const nlohmann::json& params);

std::vector<std::string> formula_names();

// Embedded table of worked examples; one line per check. True when all hold.
bool selftest(std::ostream& out);

}  // namespace stabcv::cli

#endif  // STABCV_TOOLS_CLI_HPP_
