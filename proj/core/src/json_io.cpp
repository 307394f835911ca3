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


#include "stabcv/json_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <variant>

namespace stabcv {

using nlohmann::json;

namespace {

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

}  // namespace

std::string json_child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string json_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& require_key(const json& j, std::string_view key,
                        const std::string& path) {
  auto it = j.find(std::string(key));
  if (it == j.end()) {
    throw ConfigError(json_child(path, key), "missing required key");
  }
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::size_t size_at(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::size_t>(v.get<long long>());
  }
  throw ConfigError(path, "expected a non-negative integer");
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> numbers_at(const json& v, const std::string& path) {
  as_array(v, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number_at(v[i], json_index(path, i)));
  }
  return out;
}

double number_or(const json& j, std::string_view key, double fallback,
                 const std::string& path) {
  auto it = j.find(std::string(key));
  return it == j.end() ? fallback : number_at(*it, json_child(path, key));
}

std::size_t size_or(const json& j, std::string_view key, std::size_t fallback,
                    const std::string& path) {
  auto it = j.find(std::string(key));
  return it == j.end() ? fallback : size_at(*it, json_child(path, key));
}

bool bool_or(const json& j, std::string_view key, bool fallback,
             const std::string& path) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw ConfigError(json_child(path, key), "expected a boolean");
  return it->get<bool>();
}

namespace {

// Runs `f`, rethrowing library validation errors as ConfigError at `path`.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

json wilson_to_json(const WilsonInterval& w) {
  return {{"point", w.point}, {"lower", w.lower}, {"upper", w.upper}};
}

json mean_to_json(const MeanEstimate& m) {
  return {{"mean", m.mean}, {"std_error", m.std_error}, {"count", m.count}};
}

json hypothesis_to_json(const Model& model) {
  if (const auto* c = dynamic_cast<const ConstantModel*>(&model)) {
    return {{"type", "constant"},
            {"dim", c->dim()},
            {"value", c->predict(std::vector<double>(c->dim(), 0.0), 0.5)}};
  }
  if (const auto* s = dynamic_cast<const StumpModel*>(&model)) {
    return {{"type", "stump"},        {"dim", s->dim()},
            {"feature", s->feature()}, {"threshold", s->threshold()},
            {"below", s->below()},     {"above", s->above()}};
  }
  throw InvalidArgument("hypothesis has no JSON form");
}

std::shared_ptr<const Model> hypothesis_from_json(const json& j,
                                                  const std::string& path) {
  const std::string type = string_at(require_key(j, "type", path), json_child(path, "type"));
  if (type == "constant") {
    check_keys(j, {"type", "dim", "value"}, path);
    return std::make_shared<ConstantModel>(
        size_or(j, "dim", 0, path),
        number_at(require_key(j, "value", path), json_child(path, "value")));
  }
  if (type == "stump") {
    check_keys(j, {"type", "dim", "feature", "threshold", "below", "above"},
               path);
    return at_path(path, [&]() -> std::shared_ptr<const Model> {
      return std::make_shared<StumpModel>(
          size_or(j, "dim", 1, path), size_or(j, "feature", 0, path),
          number_at(require_key(j, "threshold", path), json_child(path, "threshold")),
          number_or(j, "below", 0.0, path), number_or(j, "above", 1.0, path));
    });
  }
  throw ConfigError(json_child(path, "type"), "unknown hypothesis type '" + type + "'");
}

json feature_to_json(const Feature& f) {
  switch (f.kind) {
    case Feature::Kind::kCoordinate:
      return {{"type", "coordinate"}, {"index", f.index}};
    case Feature::Kind::kPower:
      return {{"type", "power"}, {"index", f.index}, {"exponent", f.parameter}};
    case Feature::Kind::kConstant:
      return {{"type", "constant"}};
    case Feature::Kind::kSine:
      return {{"type", "sine"}, {"index", f.index}, {"frequency", f.parameter}};
    case Feature::Kind::kCosine:
      return {{"type", "cosine"}, {"index", f.index}, {"frequency", f.parameter}};
    case Feature::Kind::kCustom:
      break;
  }
  throw InvalidArgument("custom feature '" + f.name + "' has no JSON form");
}

Feature feature_from_json(const json& j, const std::string& path) {
  const std::string type = string_at(require_key(j, "type", path), json_child(path, "type"));
  if (type == "constant") {
    check_keys(j, {"type"}, path);
    return Feature::constant();
  }
  const std::size_t index = size_or(j, "index", 0, path);
  if (type == "coordinate") {
    check_keys(j, {"type", "index"}, path);
    return Feature::coordinate(index);
  }
  if (type == "power") {
    check_keys(j, {"type", "index", "exponent"}, path);
    const double e = number_at(require_key(j, "exponent", path), json_child(path, "exponent"));
    if (e != std::floor(e)) {
      throw ConfigError(json_child(path, "exponent"), "expected an integer");
    }
    return Feature::power(index, static_cast<int>(e));
  }
  if (type == "sine" || type == "cosine") {
    check_keys(j, {"type", "index", "frequency"}, path);
    const double w = number_or(j, "frequency", 1.0, path);
    return type == "sine" ? Feature::sine(index, w) : Feature::cosine(index, w);
  }
  throw ConfigError(json_child(path, "type"), "unknown feature type '" + type + "'");
}

json kernel_to_json(const Kernel& k) {
  if (k.kind == Kernel::Kind::kLinear) return {{"kind", "linear"}};
  return {{"kind", "gaussian"}, {"gamma", k.gamma}};
}

Kernel kernel_from_json(const json& j, const std::string& path) {
  check_keys(j, {"kind", "gamma"}, path);
  const std::string kind = string_at(require_key(j, "kind", path), json_child(path, "kind"));
  if (kind == "linear") return Kernel::linear();
  if (kind == "gaussian") {
    return at_path(json_child(path, "gamma"), [&] {
      return Kernel::gaussian(number_or(j, "gamma", 1.0, path));
    });
  }
  throw ConfigError(json_child(path, "kind"), "unknown kernel '" + kind + "'");
}

}  // namespace

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (std::string_view a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigError(json_child(path, it.key()), "unknown key");
  }
}

LossKind loss_from_json(const json& j, const std::string& path) {
  check_keys(j, {"kind", "M"}, path);
  const std::string kind = string_at(require_key(j, "kind", path), json_child(path, "kind"));
  if (kind == "zero-one") {
    if (j.contains("M")) throw ConfigError(json_child(path, "M"), "zero-one loss takes no M");
    return LossKind::zero_one();
  }
  if (kind == "squared-clipped") {
    const double m = number_at(require_key(j, "M", path), json_child(path, "M"));
    return at_path(json_child(path, "M"), [&] { return LossKind::squared_clipped(m); });
  }
  throw ConfigError(json_child(path, "kind"), "unknown loss '" + kind + "'");
}

json loss_to_json(const LossKind& loss) {
  if (loss.type == LossType::kZeroOne) return {{"kind", "zero-one"}};
  return {{"kind", "squared-clipped"}, {"M", loss.bound}};
}

Learner learner_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const std::string name =
      string_at(require_key(j, "learner", path), json_child(path, "learner"));
  auto loss_or = [&](LossKind fallback) {
    auto it = j.find("loss");
    return it == j.end() ? fallback : loss_from_json(*it, json_child(path, "loss"));
  };

  LearnerSpec spec;
  LossKind loss;
  if (name == "knn") {
    check_keys(j, {"learner", "k", "task", "loss"}, path);
    KnnSpec s;
    s.k = size_or(j, "k", 1, path);
    if (auto it = j.find("task"); it != j.end()) {
      const std::string task = string_at(*it, json_child(path, "task"));
      if (task == "classification") {
        s.task = Task::kClassification;
      } else if (task == "regression") {
        s.task = Task::kRegression;
      } else {
        throw ConfigError(json_child(path, "task"), "unknown task '" + task + "'");
      }
    }
    loss = loss_or(s.task == Task::kClassification
                       ? LossKind::zero_one()
                       : LossKind::squared_clipped(1.0));
    spec = s;
  } else if (name == "regnet") {
    check_keys(j, {"learner", "kernel", "lambda", "loss"}, path);
    RegnetSpec s;
    if (auto it = j.find("kernel"); it != j.end()) {
      s.kernel = kernel_from_json(*it, json_child(path, "kernel"));
    }
    s.lambda_reg = number_or(j, "lambda", s.lambda_reg, path);
    loss = loss_or(LossKind::squared_clipped(1.0));
    spec = s;
  } else if (name == "erm") {
    check_keys(j, {"learner", "hypotheses", "loss"}, path);
    ErmSpec s;
    const std::string hp = json_child(path, "hypotheses");
    const json& hs = as_array(require_key(j, "hypotheses", path), hp);
    for (std::size_t i = 0; i < hs.size(); ++i) {
      s.hypotheses.push_back(hypothesis_from_json(hs[i], json_index(hp, i)));
    }
    loss = loss_or(LossKind::zero_one());
    spec = s;
  } else if (name == "adaboost") {
    check_keys(j, {"learner", "rounds", "loss"}, path);
    AdaboostSpec s;
    s.rounds = size_or(j, "rounds", s.rounds, path);
    loss = loss_or(LossKind::zero_one());
    spec = s;
  } else if (name == "lasso") {
    check_keys(j, {"learner", "dictionary", "tuning_constant", "max_sweeps",
                   "tolerance", "loss"},
               path);
    LassoSpec s;
    const std::string dp = json_child(path, "dictionary");
    const json& ds = as_array(require_key(j, "dictionary", path), dp);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      s.dictionary.push_back(feature_from_json(ds[i], json_index(dp, i)));
    }
    s.tuning_constant = number_or(j, "tuning_constant", s.tuning_constant, path);
    s.options.max_sweeps = size_or(j, "max_sweeps", s.options.max_sweeps, path);
    s.options.tolerance = number_or(j, "tolerance", s.options.tolerance, path);
    loss = loss_or(LossKind::squared_clipped(1.0));
    spec = s;
  } else if (name == "constant") {
    check_keys(j, {"learner", "value", "loss"}, path);
    ConstantSpec s;
    s.value = number_or(j, "value", 0.0, path);
    loss = loss_or(LossKind::zero_one());
    spec = s;
  } else {
    throw ConfigError(json_child(path, "learner"), "unknown learner '" + name + "'");
  }
  return at_path(path, [&] { return Learner(spec, loss); });
}

json learner_to_json(const Learner& learner) {
  json j = {{"learner", std::string(learner.name())},
            {"loss", loss_to_json(learner.loss())}};
  const LearnerSpec& spec = learner.spec();
  if (const auto* s = std::get_if<KnnSpec>(&spec)) {
    j["k"] = s->k;
    j["task"] = s->task == Task::kClassification ? "classification" : "regression";
  } else if (const auto* s = std::get_if<RegnetSpec>(&spec)) {
    j["kernel"] = kernel_to_json(s->kernel);
    j["lambda"] = s->lambda_reg;
  } else if (const auto* s = std::get_if<ErmSpec>(&spec)) {
    j["hypotheses"] = json::array();
    for (const auto& h : s->hypotheses) j["hypotheses"].push_back(hypothesis_to_json(*h));
  } else if (const auto* s = std::get_if<AdaboostSpec>(&spec)) {
    j["rounds"] = s->rounds;
  } else if (const auto* s = std::get_if<LassoSpec>(&spec)) {
    j["dictionary"] = json::array();
    for (const Feature& f : s->dictionary) j["dictionary"].push_back(feature_to_json(f));
    j["tuning_constant"] = s->tuning_constant;
    j["max_sweeps"] = s->options.max_sweeps;
    j["tolerance"] = s->options.tolerance;
  } else if (const auto* s = std::get_if<ConstantSpec>(&spec)) {
    j["value"] = s->value;
  }
  return j;
}

SyntheticDistribution law_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const std::string kind = string_at(require_key(j, "kind", path), json_child(path, "kind"));
  if (kind == "discrete") {
    check_keys(j, {"kind", "atoms"}, path);
    const std::string ap = json_child(path, "atoms");
    const json& as = as_array(require_key(j, "atoms", path), ap);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < as.size(); ++i) {
      const std::string p = json_index(ap, i);
      check_keys(as[i], {"x", "y", "prob"}, p);
      Atom a;
      a.x = numbers_at(require_key(as[i], "x", p), json_child(p, "x"));
      a.y = number_at(require_key(as[i], "y", p), json_child(p, "y"));
      a.prob = number_at(require_key(as[i], "prob", p), json_child(p, "prob"));
      atoms.push_back(std::move(a));
    }
    return at_path(ap, [&] { return SyntheticDistribution::discrete(atoms); });
  }
  if (kind == "gaussian-regression") {
    check_keys(j, {"kind", "slope", "intercept", "sigma", "x_law", "lo", "hi"},
               path);
    const auto slope = numbers_at(require_key(j, "slope", path), json_child(path, "slope"));
    SyntheticDistribution::XLaw x_law = SyntheticDistribution::XLaw::kUniform;
    if (auto it = j.find("x_law"); it != j.end()) {
      const std::string xl = string_at(*it, json_child(path, "x_law"));
      if (xl == "normal") {
        x_law = SyntheticDistribution::XLaw::kNormal;
      } else if (xl != "uniform") {
        throw ConfigError(json_child(path, "x_law"), "unknown x law '" + xl + "'");
      }
    }
    return at_path(path, [&] {
      return SyntheticDistribution::gaussian_regression(
          slope, number_or(j, "intercept", 0.0, path),
          number_at(require_key(j, "sigma", path), json_child(path, "sigma")), x_law,
          number_or(j, "lo", 0.0, path),
          number_or(j, "hi", 1.0, path));
    });
  }
  if (kind == "two-class-gaussian") {
    check_keys(j, {"kind", "mean0", "mean1", "sigma", "prior_one"}, path);
    const auto m0 = numbers_at(require_key(j, "mean0", path), json_child(path, "mean0"));
    const auto m1 = numbers_at(require_key(j, "mean1", path), json_child(path, "mean1"));
    return at_path(path, [&] {
      return SyntheticDistribution::two_class_gaussian(
          m0, m1, number_or(j, "sigma", 1.0, path),
          number_or(j, "prior_one", 0.5, path));
    });
  }
  throw ConfigError(json_child(path, "kind"), "unknown law '" + kind + "'");
}

json law_to_json(const SyntheticDistribution& law) {
  using K = SyntheticDistribution::Kind;
  switch (law.kind()) {
    case K::kDiscreteJoint: {
      json atoms = json::array();
      for (const Atom& a : law.atoms()) {
        atoms.push_back({{"x", a.x}, {"y", a.y}, {"prob", a.prob}});
      }
      return {{"kind", "discrete"}, {"atoms", atoms}};
    }
    case K::kGaussianRegression:
      return {{"kind", "gaussian-regression"},
              {"slope", std::vector<double>(law.slope().begin(), law.slope().end())},
              {"intercept", law.intercept()},
              {"sigma", law.sigma()},
              {"x_law", law.x_law() == SyntheticDistribution::XLaw::kUniform
                            ? "uniform"
                            : "normal"},
              {"lo", law.x_lo()},
              {"hi", law.x_hi()}};
    case K::kTwoClassGaussian:
      return {{"kind", "two-class-gaussian"},
              {"mean0", std::vector<double>(law.mean0().begin(), law.mean0().end())},
              {"mean1", std::vector<double>(law.mean1().begin(), law.mean1().end())},
              {"sigma", law.sigma()},
              {"prior_one", law.prior_one()}};
  }
  return {};
}

ResamplingScheme scheme_spec_from_json(const json& j, std::size_t n,
                                       std::uint64_t seed,
                                       const std::string& path) {
  check_keys(j, {"kind", "k", "nu", "draws", "mask", "cap"}, path);
  const std::string name = string_at(require_key(j, "kind", path), json_child(path, "kind"));
  const SchemeKind kind =
      at_path(json_child(path, "kind"), [&] { return scheme_kind_from_string(name); });
  SchemeParams params;
  params.k = size_or(j, "k", 0, path);
  params.nu = size_or(j, "nu", 0, path);
  params.draws = size_or(j, "draws", 0, path);
  params.support_cap = number_or(j, "cap", params.support_cap, path);
  if (auto it = j.find("mask"); it != j.end()) {
    const std::string mp = json_child(path, "mask");
    as_array(*it, mp);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::size_t bit = size_at((*it)[i], json_index(mp, i));
      if (bit > 1) throw ConfigError(json_index(mp, i), "expected 0 or 1");
      params.holdout_mask.push_back(static_cast<std::uint8_t>(bit));
    }
  }
  return at_path(path, [&] { return build_scheme(n, kind, params, seed); });
}

json profile_to_json(const StabilityProfile& profile) {
  return {{"kind", std::string(to_string(profile.kind))},
          {"distance", std::string(to_string(profile.distance))},
          {"alpha", profile.alpha},
          {"lambda", profile.lambda},
          {"delta", profile.delta},
          {"provenance", std::string(to_string(profile.provenance))},
          {"reps", profile.reps},
          {"seed", profile.seed}};
}

StabilityProfile profile_from_json(const json& j, const std::string& path) {
  check_keys(j, {"kind", "distance", "alpha", "lambda", "delta", "provenance",
                 "reps", "seed"},
             path);
  StabilityProfile p;
  const std::string kind = string_at(require_key(j, "kind", path), json_child(path, "kind"));
  p.kind = at_path(json_child(path, "kind"), [&] { return stability_kind_from_string(kind); });
  if (auto it = j.find("distance"); it != j.end()) {
    const std::string d = string_at(*it, json_child(path, "distance"));
    p.distance = at_path(json_child(path, "distance"), [&] { return distance_from_string(d); });
  }
  p.alpha = number_or(j, "alpha", 1.0, path);
  p.lambda = number_at(require_key(j, "lambda", path), json_child(path, "lambda"));
  p.delta = number_or(j, "delta", 0.0, path);
  p.provenance = Provenance::kCertified;
  if (auto it = j.find("provenance"); it != j.end()) {
    const std::string pv = string_at(*it, json_child(path, "provenance"));
    if (pv == "estimated") {
      p.provenance = Provenance::kEstimated;
    } else if (pv != "certified") {
      throw ConfigError(json_child(path, "provenance"), "unknown provenance '" + pv + "'");
    }
  }
  p.reps = size_or(j, "reps", 0, path);
  if (auto it = j.find("seed"); it != j.end()) {
    p.seed = size_at(*it, json_child(path, "seed"));
  }
  at_path(path, [&] {
    validate(p);
    return 0;
  });
  return p;
}

json tail_bound_to_json(const TailBound& bound) {
  json inputs = json::object();
  for (const auto& [name, value] : bound.inputs) inputs[name] = value;
  return {{"threshold_shift", bound.threshold_shift},
          {"raw", bound.raw},
          {"clipped", bound.clipped},
          {"vacuous", bound.vacuous},
          {"displayed", bound.displayed},
          {"inputs", inputs}};
}

json error_triple_to_json(const ErrorTriple& t) {
  return {{"r_cv", t.r_cv},   {"r_tilde", t.r_tilde},
          {"r_tilde_stderr", t.r_tilde_stderr},
          {"r_hat", t.r_hat}, {"gap", t.gap}};
}

json profile_estimate_to_json(const ProfileEstimate& e) {
  json curve = json::array();
  for (const CurvePoint& c : e.curve) {
    curve.push_back(json::array({c.lambda, c.delta, c.std_error}));
  }
  json targets = json::array();
  json achieved = json::array();
  for (const LambdaAtDelta& l : e.lambda_at_delta) {
    targets.push_back(json::array({l.delta, l.lambda}));
    achieved.push_back(wilson_to_json(l.achieved));
  }
  return {{"kind", std::string(to_string(e.profile.kind))},
          {"distance", std::string(to_string(e.profile.distance))},
          {"alpha", e.profile.alpha},
          {"lambda_at_delta", targets},
          {"achieved_delta", achieved},
          {"curve", curve},
          {"reps", e.profile.reps},
          {"seed", e.profile.seed},
          {"profile", profile_to_json(e.profile)},
          {"ratios", e.ratios},
          {"max_distance", e.max_distance},
          {"pairs_evaluated", e.pairs_evaluated},
          {"ordering_violations", e.ordering_violations},
          {"ceiling_violations", e.ceiling_violations}};
}

json concentration_report_to_json(const ConcentrationReport& r) {
  json rows = json::array();
  for (const ConcentrationRow& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"shift", row.shift},
                    {"exceedances", row.exceedances},
                    {"emp_freq", row.freq.point},
                    {"emp_lcl", row.freq.lower},
                    {"emp_ucl", row.freq.upper},
                    {"bound", tail_bound_to_json(row.bound)},
                    {"verdict", std::string(to_string(row.verdict))},
                    {"within_slack", row.within_slack}});
  }
  return {{"n", r.n},
          {"p", r.p},
          {"scheme", r.scheme},
          {"learner", r.learner},
          {"bound", std::string(to_string(r.bound))},
          {"profile", profile_to_json(r.profile)},
          {"consistency_audit", r.consistency_audit},
          {"replicates", r.replicates},
          {"seed", r.seed},
          {"mean_gap", mean_to_json(r.mean_gap)},
          {"l1_bound", r.l1_bound},
          {"fail_count", r.fail_count},
          {"rows", rows},
          {"gaps", r.gaps}};
}

json split_report_to_json(const SplitReport& r) {
  json rows = json::array();
  for (const SplitRow& row : r.rows) {
    rows.push_back({{"p", row.p},
                    {"nu", row.nu},
                    {"scheme", row.scheme},
                    {"gap", mean_to_json(row.gap)},
                    {"l1_bound", row.l1_bound}});
  }
  return {{"n", r.n},
          {"learner", r.learner},
          {"replicates", r.replicates},
          {"seed", r.seed},
          {"rows", rows},
          {"argmin", r.argmin},
          {"empirical_p_star", r.rows.empty() ? 0.0 : r.rows[r.argmin].p},
          {"theory",
           {{"p_star", r.theory.p_star},
            {"objective", r.theory.objective},
            {"interior", r.theory.interior}}},
          {"shape", r.shape}};
}

json audit_report_to_json(const AuditReport& r) {
  json j = {{"estimate", profile_estimate_to_json(r.estimate)},
            {"certificate", nullptr},
            {"certificate_violations", r.certificate_violations},
            {"certificate_holds", r.certificate_holds}};
  if (r.certificate) j["certificate"] = *r.certificate;
  return j;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string concentration_csv(const ConcentrationReport& report) {
  std::ostringstream out;
  out << "eps,shift,emp_freq,emp_lcl,emp_ucl,bound_raw,bound_clipped,verdict\n";
  for (const ConcentrationRow& row : report.rows) {
    out << format_double(row.eps) << ',' << format_double(row.shift) << ','
        << format_double(row.freq.point) << ',' << format_double(row.freq.lower)
        << ',' << format_double(row.freq.upper) << ','
        << format_double(row.bound.raw) << ',' << format_double(row.bound.clipped)
        << ',' << to_string(row.verdict) << '\n';
  }
  return out.str();
}

}  // namespace stabcv
