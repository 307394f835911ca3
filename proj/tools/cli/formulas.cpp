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


#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "cli/cli.hpp"
#include "stabcv/bounds.hpp"
#include "stabcv/json_io.hpp"
#include "stabcv/stability.hpp"

namespace stabcv::cli {

namespace {

using nlohmann::json;

const std::string kParams = "$.params";

// Reads parameters and records them, in order, for the CSV echo.
class Params {
 public:
  explicit Params(const json& j) : j_(j) {
    if (!j_.is_object()) throw ConfigError(kParams, "expected an object");
  }

  double num(std::string_view key) {
    return echo(key, number_at(require_key(j_, key, kParams), path(key)));
  }
  double num(std::string_view key, double fallback) {
    return echo(key, number_or(j_, key, fallback, kParams));
  }
  std::optional<double> maybe_num(std::string_view key) {
    if (!j_.contains(std::string(key))) return std::nullopt;
    return num(key);
  }
  std::size_t count(std::string_view key) {
    const std::size_t v = size_at(require_key(j_, key, kParams), path(key));
    columns_.emplace_back(key, std::to_string(v));
    return v;
  }
  std::size_t count(std::string_view key, std::size_t fallback) {
    const std::size_t v = size_or(j_, key, fallback, kParams);
    columns_.emplace_back(key, std::to_string(v));
    return v;
  }
  bool flag(std::string_view key, bool fallback) {
    const bool v = bool_or(j_, key, fallback, kParams);
    columns_.emplace_back(key, v ? "true" : "false");
    return v;
  }
  std::string text(std::string_view key, const std::string& fallback) {
    const std::string v = j_.contains(std::string(key))
                              ? string_at(j_.at(std::string(key)), path(key))
                              : fallback;
    columns_.emplace_back(key, v);
    return v;
  }
  std::vector<double> list(std::string_view key) {
    auto v = numbers_at(j_.at(std::string(key)), path(key));
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) {
      joined += (i ? ";" : "") + format_double(v[i]);
    }
    columns_.emplace_back(key, joined);
    return v;
  }
  std::vector<Range> ranges(std::string_view key) {
    const json& v = j_.at(std::string(key));
    if (!v.is_array()) throw ConfigError(path(key), "expected an array");
    std::vector<Range> out;
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto pair = numbers_at(v[i], json_index(path(key), i));
      if (pair.size() != 2) {
        throw ConfigError(json_index(path(key), i), "expected [lo, hi]");
      }
      out.push_back({pair[0], pair[1]});
      joined += (i ? ";" : "") + format_double(pair[0]) + ":" + format_double(pair[1]);
    }
    columns_.emplace_back(key, joined);
    return out;
  }
  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  const std::vector<std::pair<std::string, std::string>>& columns() const {
    return columns_;
  }

 private:
  static std::string path(std::string_view key) { return json_child(kParams, key); }
  double echo(std::string_view key, double v) {
    columns_.emplace_back(key, format_double(v));
    return v;
  }

  const json& j_;
  std::vector<std::pair<std::string, std::string>> columns_;
};

struct Result {
  bool tail = true;
  TailBound bound;     // tail formulas
  std::vector<std::pair<std::string, double>> values;  // others
};

Result tail(TailBound b) {
  Result r;
  r.bound = std::move(b);
  return r;
}

Result probability(double raw) { return tail(make_tail(0.0, raw, {})); }

Result values(std::vector<std::pair<std::string, double>> v) {
  Result r;
  r.tail = false;
  r.values = std::move(v);
  return r;
}

struct Formula {
  std::vector<std::string_view> keys;
  std::function<Result(Params&)> eval;
};

const std::map<std::string, Formula, std::less<>>& formulas() {
  static const std::map<std::string, Formula, std::less<>> table = {
      {"generic",
       {{"n", "p", "eps", "lambda", "alpha", "delta", "multiplier"},
        [](Params& a) {
          const auto n = a.count("n");
          const double p = a.num("p"), eps = a.num("eps"), lambda = a.num("lambda");
          const double alpha = a.num("alpha", 1.0), delta = a.num("delta", 0.0);
          return tail(generic_stability_tail(n, p, eps, lambda, alpha, delta,
                                             a.num("multiplier", 1.0)));
        }}},
      {"uniform-strong",
       {{"n", "p", "eps", "lambda", "alpha", "delta", "delta_loo_next",
         "alpha_prime"},
        [](Params& a) {
          const auto n = a.count("n");
          const double p = a.num("p"), eps = a.num("eps"), lambda = a.num("lambda");
          const double alpha = a.num("alpha", 1.0), delta = a.num("delta", 0.0);
          const double next = a.num("delta_loo_next", 0.0);
          return tail(uniform_stability_tail_strong(n, p, eps, lambda, alpha, delta,
                                                    next, a.maybe_num("alpha_prime")));
        }}},
      {"uniform-weak",
       {{"n", "p", "eps", "lambda", "alpha", "delta", "delta_prime"},
        [](Params& a) {
          const auto n = a.count("n");
          const double p = a.num("p"), eps = a.num("eps"), lambda = a.num("lambda");
          const double alpha = a.num("alpha", 1.0), delta = a.num("delta", 0.0);
          return tail(uniform_stability_tail_weak(n, p, eps, lambda, alpha, delta,
                                                  a.num("delta_prime", 0.0)));
        }}},
      {"holdout-uniform",
       {{"n", "p", "eps", "lambda", "alpha", "delta", "delta_loo",
         "exponent_with_n"},
        [](Params& a) {
          const auto n = a.count("n");
          const double p = a.num("p"), eps = a.num("eps"), lambda = a.num("lambda");
          const double alpha = a.num("alpha", 1.0), delta = a.num("delta", 0.0);
          const double loo = a.num("delta_loo", 0.0);
          HoldoutOptions opts;
          opts.exponent_with_n = a.flag("exponent_with_n", false);
          return tail(holdout_uniform_tail(n, p, eps, lambda, alpha, delta, loo, opts));
        }}},
      {"vc",
       {{"n", "p", "eps", "vc_dim", "log_argument_with_n"},
        [](Params& a) {
          const auto n = a.count("n");
          const double p = a.num("p"), eps = a.num("eps");
          const double vc_dim = a.num("vc_dim", 1.0);
          VcOptions opts;
          opts.log_argument_with_n = a.flag("log_argument_with_n", false);
          return tail(vc_baseline(n, p, eps, vc_dim, opts));
        }}},
      {"hoeffding",
       {{"n", "eps", "range", "ranges"},
        [](Params& a) {
          const auto n = a.count("n");
          const double eps = a.num("eps");
          if (!a.has("ranges")) return probability(hoeffding_tail(n, eps, a.num("range", 1.0)));
          return probability(hoeffding_tail(n, eps, a.ranges("ranges")));
        }}},
      {"mcdiarmid",
       {{"eps", "c", "count"},
        [](Params& a) {
          const double eps = a.num("eps");
          std::vector<double> c;
          if (a.has("count")) {
            const auto m = a.count("count");
            c.assign(m, a.num("c"));
          } else {
            c = a.list("c");
          }
          return probability(mcdiarmid_tail(eps, c));
        }}},
      {"kutin-strong",
       {{"n", "tau", "b", "c", "delta", "alpha_prime"},
        [](Params& a) {
          const auto n = a.count("n");
          const double tau = a.num("tau"), b = a.num("b"), c = a.num("c");
          const double delta = a.num("delta", 0.0);
          return probability(kutin_strong_tail(n, tau, b, c, delta, a.num("alpha_prime")));
        }}},
      {"kutin-weak",
       {{"n", "eps", "b", "c", "delta"},
        [](Params& a) {
          const auto n = a.count("n");
          const double eps = a.num("eps"), b = a.num("b"), c = a.num("c");
          const double delta = a.num("delta", 0.0);
          return tail(make_tail(0.0, kutin_weak_tail(n, eps, b, c, delta), {},
                                kutin_weak_displayed(n, eps, b, c, delta)));
        }}},
      {"knn-tail",
       {{"n", "k", "d", "eps"},
        [](Params& a) {
          const auto n = a.count("n");
          const auto k = a.count("k", 1);
          const auto d = a.count("d", 1);
          return probability(certificate_knn_tail(n, k, d, a.num("eps")).raw);
        }}},
      {"expectation-from-tail",
       {{"C", "K"},
        [](Params& a) {
          const double c = a.num("C");
          return values({{"value", expectation_from_tail(c, a.num("K"))}});
        }}},
      {"l1",
       {{"kind", "n", "p", "lambda", "delta", "delta_prime"},
        [](Params& a) {
          const L1Kind kind = l1_kind_from_string(a.text("kind", "weak-general"));
          const auto n = a.count("n");
          const double p = a.num("p"), lambda = a.num("lambda");
          const double delta = a.num("delta", 0.0);
          return values({{"value", l1_bound(kind, n, p, lambda, delta,
                                            a.num("delta_prime", 0.0))}});
        }}},
      {"optimal-split",
       {{"kind", "n", "lambda"},
        [](Params& a) {
          const L1Kind kind = l1_kind_from_string(a.text("kind", "weak-general"));
          const auto n = a.count("n");
          const SplitRule r = optimal_split(kind, n, a.num("lambda"));
          return values({{"p_star", r.p_star},
                         {"objective", r.objective},
                         {"interior", r.interior ? 1.0 : 0.0}});
        }}},
      {"heuristic-delta",
       {{"n", "p", "c0"},
        [](Params& a) {
          const auto n = a.count("n");
          const double p = a.num("p");
          return values({{"value", heuristic_delta(n, p, a.num("c0", 1.0))}});
        }}},
      {"regnet-certificate",
       {{"M", "kappa", "n", "lambda_reg"},
        [](Params& a) {
          const double m = a.num("M"), kappa = a.num("kappa");
          const auto n = a.count("n");
          return values({{"value",
                          certificate_regnet(m, kappa, n, a.num("lambda_reg")).lambda}});
        }}},
  };
  return table;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> formula_names() {
  std::vector<std::string> names;
  for (const auto& [name, f] : formulas()) names.push_back(name);
  return names;
}

std::string eval_formula(std::string_view formula, const json& params) {
  const auto& table = formulas();
  const auto it = table.find(formula);
  if (it == table.end()) {
    throw ConfigError("--formula", "unknown formula '" + std::string(formula) + "'");
  }
  Params reader(params);
  for (auto p = params.begin(); p != params.end(); ++p) {
    bool known = false;
    for (std::string_view k : it->second.keys) known = known || p.key() == k;
    if (!known) throw ConfigError(json_child(kParams, p.key()), "unknown key");
  }
  Result r;
  try {
    r = it->second.eval(reader);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(kParams, e.what());
  }

  std::vector<std::string> header = {"formula"};
  std::vector<std::string> row = {std::string(formula)};
  for (const auto& [k, v] : reader.columns()) {
    header.push_back(k);
    row.push_back(v);
  }
  if (r.tail) {
    header.insert(header.end(), {"shift", "raw", "clipped", "vacuous"});
    row.push_back(format_double(r.bound.threshold_shift));
    row.push_back(format_double(r.bound.raw));
    row.push_back(format_double(r.bound.clipped));
    row.push_back(r.bound.vacuous ? "true" : "false");
  } else {
    for (const auto& [k, v] : r.values) {
      header.push_back(k);
      row.push_back(format_double(v));
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << csv_escape(header[i]);
  }
  out << '\n';
  for (std::size_t i = 0; i < row.size(); ++i) {
    out << (i ? "," : "") << csv_escape(row[i]);
  }
  out << '\n';
  return out.str();
}

}  // namespace stabcv::cli
