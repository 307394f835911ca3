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


#include "cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "stabcv/error.hpp"
#include "stabcv/estimation.hpp"
#include "stabcv/experiments.hpp"
#include "stabcv/json_io.hpp"
#include "stabcv/random.hpp"
#include "stabcv/stability.hpp"

namespace stabcv::cli {

namespace {

using nlohmann::json;

const std::string kRoot = "$";

struct Globals {
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::string out = "-";
  std::string csv;
  std::string config;
};

json load_config(const std::string& path) {
  if (path.empty()) throw ConfigError("--config", "a config file is required");
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("malformed JSON: ") + e.what());
  }
}

std::uint64_t parse_seed_env() {
  const char* env = std::getenv("STABCV_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("STABCV_SEED", "expected an unsigned integer");
  }
}

// --seed, then the config's "seed", then STABCV_SEED, then 0.
std::uint64_t resolve_seed(const Globals& g, const json& cfg) {
  if (g.seed) return *g.seed;
  if (cfg.is_object() && cfg.contains("seed")) {
    return size_at(cfg.at("seed"), json_child(kRoot, "seed"));
  }
  return parse_seed_env();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path, "cannot open output file");
  f << text;
}

void emit(const Globals& g, const json& report, std::ostream& out) {
  write_text(g.out, report.dump(2) + "\n", out);
}

std::vector<Example> examples_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  std::vector<Example> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = json_index(path, i);
    check_keys(j[i], {"x", "y", "u"}, p);
    Example z;
    z.x = numbers_at(require_key(j[i], "x", p), json_child(p, "x"));
    z.y = number_at(require_key(j[i], "y", p), json_child(p, "y"));
    z.u = number_or(j[i], "u", 0.5, p);
    out.push_back(std::move(z));
  }
  return out;
}

ProfileOptions profile_options(const json& j, const std::string& path,
                               const Learner& learner, std::uint64_t seed,
                               std::size_t workers) {
  check_keys(j, {"kind", "distance", "alpha", "reps", "z_probes", "fresh_probes",
                 "probe_grid", "eval_sample", "support_cap", "lambda_grid",
                 "delta_targets", "wilson_z", "distance_ceiling"},
             path);
  ProfileOptions o;
  o.seed = seed;
  o.workers = workers;
  if (j.contains("kind")) {
    const std::string k = string_at(j.at("kind"), json_child(path, "kind"));
    try {
      o.kind = stability_kind_from_string(k);
    } catch (const InvalidArgument& e) {
      throw ConfigError(json_child(path, "kind"), e.what());
    }
  }
  if (j.contains("distance")) {
    const std::string d = string_at(j.at("distance"), json_child(path, "distance"));
    try {
      o.distance = distance_from_string(d);
    } catch (const InvalidArgument& e) {
      throw ConfigError(json_child(path, "distance"), e.what());
    }
  }
  const bool knn = std::holds_alternative<KnnSpec>(learner.spec());
  o.alpha = number_or(j, "alpha", knn ? 0.3 : 1.0, path);
  o.reps = size_or(j, "reps", o.reps, path);
  if (j.contains("z_probes")) {
    o.z_probes = examples_from_json(j.at("z_probes"), json_child(path, "z_probes"));
  }
  o.fresh_probes = size_or(j, "fresh_probes", o.fresh_probes, path);
  o.probe_grid = size_or(j, "probe_grid", o.probe_grid, path);
  o.eval_sample = size_or(j, "eval_sample", o.eval_sample, path);
  o.support_cap = size_or(j, "support_cap", o.support_cap, path);
  if (j.contains("lambda_grid")) {
    o.lambda_grid = numbers_at(j.at("lambda_grid"), json_child(path, "lambda_grid"));
  }
  if (j.contains("delta_targets")) {
    o.delta_targets =
        numbers_at(j.at("delta_targets"), json_child(path, "delta_targets"));
  }
  o.wilson_z = number_or(j, "wilson_z", o.wilson_z, path);
  if (j.contains("distance_ceiling")) {
    o.distance_ceiling =
        number_at(j.at("distance_ceiling"), json_child(path, "distance_ceiling"));
  }
  return o;
}

// Pieces shared by the config-driven commands.
struct Setup {
  json cfg;
  std::uint64_t seed = 0;
  std::optional<SyntheticDistribution> law;
  std::optional<Learner> learner;
  std::size_t n = 0;
  std::optional<ResamplingScheme> scheme;
};

Setup setup(const Globals& g, std::initializer_list<std::string_view> keys,
            bool needs_scheme) {
  Setup s;
  s.cfg = load_config(g.config);
  check_keys(s.cfg, keys, kRoot);
  s.seed = resolve_seed(g, s.cfg);
  s.law = law_from_json(require_key(s.cfg, "law", kRoot), json_child(kRoot, "law"));
  s.learner = learner_from_json(require_key(s.cfg, "learner", kRoot),
                                json_child(kRoot, "learner"));
  s.n = size_at(require_key(s.cfg, "n", kRoot), json_child(kRoot, "n"));
  if (needs_scheme) {
    s.scheme = scheme_spec_from_json(require_key(s.cfg, "scheme", kRoot), s.n,
                                     stream_seed(s.seed, 0),
                                     json_child(kRoot, "scheme"));
  }
  return s;
}

int cmd_bounds_eval(const std::string& formula, const std::string& params,
                    const Globals& g, std::ostream& out) {
  json p;
  try {
    p = params.empty() ? json::object() : json::parse(params);
  } catch (const json::parse_error& e) {
    throw ConfigError("--params", std::string("malformed JSON: ") + e.what());
  }
  write_text(g.out, eval_formula(formula, p), out);
  return kExitOk;
}

int cmd_scheme_build(const Globals& g, std::ostream& out) {
  const json cfg = load_config(g.config);
  check_keys(cfg, {"n", "scheme", "seed"}, kRoot);
  const std::uint64_t seed = resolve_seed(g, cfg);
  const std::size_t n = size_at(require_key(cfg, "n", kRoot), json_child(kRoot, "n"));
  const ResamplingScheme s = scheme_spec_from_json(
      require_key(cfg, "scheme", kRoot), n, seed, json_child(kRoot, "scheme"));
  emit(g, scheme_to_json(s), out);
  return kExitOk;
}

int cmd_cv_run(const Globals& g, std::ostream& out) {
  Setup s = setup(g, {"law", "learner", "n", "scheme", "data_csv", "oracle_draws",
                      "closed_form", "seed"},
                  true);
  LearningSet data;
  if (s.cfg.contains("data_csv")) {
    const std::string path =
        string_at(s.cfg.at("data_csv"), json_child(kRoot, "data_csv"));
    try {
      data = load_csv(path, s.seed);
    } catch (const InvalidArgument& e) {
      throw ConfigError(json_child(kRoot, "data_csv"), e.what());
    }
    if (data.size() != s.n) {
      throw ConfigError(json_child(kRoot, "n"), "does not match the CSV row count");
    }
  } else {
    Rng rng = make_stream(s.seed, 0, StreamTag::kData);
    data = s.law->sample(s.n, rng);
  }
  std::optional<std::size_t> draws;
  if (!s.law->is_discrete()) {
    draws = size_or(s.cfg, "oracle_draws", kDefaultOracleDraws, kRoot);
  }
  CvOptions cv;
  cv.closed_form = bool_or(s.cfg, "closed_form", true, kRoot);
  cv.workers = g.workers;
  const ErrorTriple t = error_triple(*s.learner, data, *s.scheme, *s.law, draws,
                                     stream_seed(s.seed, 1), cv);
  json report = error_triple_to_json(t);
  report["scheme_echo"] = scheme_to_json(*s.scheme);
  report["seed"] = s.seed;
  emit(g, report, out);
  return kExitOk;
}

int cmd_stability(const Globals& g, std::ostream& out, bool audit) {
  Setup s = setup(g, {"law", "learner", "n", "scheme", "stability", "seed"}, true);
  const json stab = s.cfg.contains("stability") ? s.cfg.at("stability") : json::object();
  const ProfileOptions o = profile_options(stab, json_child(kRoot, "stability"),
                                           *s.learner, s.seed, g.workers);
  if (!audit) {
    emit(g, profile_estimate_to_json(estimate_profile(*s.learner, *s.scheme, *s.law, o)),
         out);
    return kExitOk;
  }
  const AuditReport r = run_stability_audit(*s.law, *s.learner, *s.scheme, o);
  emit(g, audit_report_to_json(r), out);
  return r.certificate_holds ? kExitOk : kExitFail;
}

BoundInputs bound_inputs(const json& j, const std::string& path) {
  check_keys(j, {"delta_loo", "delta_loo_next", "alpha_prime", "vc_dim",
                 "vc_log_argument_with_n", "holdout_exponent_with_n"},
             path);
  BoundInputs b;
  b.delta_loo = number_or(j, "delta_loo", 0.0, path);
  b.delta_loo_next = number_or(j, "delta_loo_next", 0.0, path);
  if (j.contains("alpha_prime")) {
    b.alpha_prime = number_at(j.at("alpha_prime"), json_child(path, "alpha_prime"));
  }
  b.vc_dim = number_or(j, "vc_dim", 1.0, path);
  b.vc.log_argument_with_n = bool_or(j, "vc_log_argument_with_n", false, path);
  b.holdout.exponent_with_n = bool_or(j, "holdout_exponent_with_n", false, path);
  return b;
}

int cmd_concentration(const Globals& g, std::ostream& out) {
  Setup s = setup(g, {"law", "learner", "n", "scheme", "profile", "bound",
                      "bound_inputs", "replicates", "eps_grid", "oracle_draws",
                      "closed_form", "verdict_z", "slack_half_widths", "seed"},
                  true);
  const std::string ppath = json_child(kRoot, "profile");
  const json& pj = require_key(s.cfg, "profile", kRoot);

  StabilityProfile profile;
  std::optional<json> provenance;
  if (pj.is_string()) {
    if (pj.get<std::string>() != "regnet-certificate") {
      throw ConfigError(ppath, "expected a profile object or \"regnet-certificate\"");
    }
    const auto* spec = std::get_if<RegnetSpec>(&s.learner->spec());
    if (spec == nullptr || s.learner->loss().type != LossType::kSquaredClipped) {
      throw ConfigError(ppath, "regnet-certificate needs a regnet learner with "
                               "squared-clipped loss");
    }
    const double kappa = std::sqrt(kernel_bound_squared(spec->kernel, *s.law));
    profile = certificate_regnet(s.learner->loss().bound, kappa, s.n, spec->lambda_reg);
  } else if (pj.is_object() && pj.contains("estimate")) {
    check_keys(pj, {"estimate"}, ppath);
    const ProfileOptions o =
        profile_options(pj.at("estimate"), json_child(ppath, "estimate"),
                        *s.learner, stream_seed(s.seed, 2), g.workers);
    const ProfileEstimate est = estimate_profile(*s.learner, *s.scheme, *s.law, o);
    profile = est.profile;
    provenance = profile_estimate_to_json(est);
  } else {
    profile = profile_from_json(pj, ppath);
  }

  ConcentrationOptions o;
  if (s.cfg.contains("bound")) {
    const std::string b = string_at(s.cfg.at("bound"), json_child(kRoot, "bound"));
    try {
      o.bound = bound_kind_from_string(b);
    } catch (const InvalidArgument& e) {
      throw ConfigError(json_child(kRoot, "bound"), e.what());
    }
  }
  if (s.cfg.contains("bound_inputs")) {
    o.bound_inputs = bound_inputs(s.cfg.at("bound_inputs"), json_child(kRoot, "bound_inputs"));
  }
  o.replicates = size_or(s.cfg, "replicates", o.replicates, kRoot);
  if (s.cfg.contains("eps_grid")) {
    o.eps_grid = numbers_at(s.cfg.at("eps_grid"), json_child(kRoot, "eps_grid"));
  }
  o.oracle_draws = size_or(s.cfg, "oracle_draws", o.oracle_draws, kRoot);
  o.closed_form = bool_or(s.cfg, "closed_form", o.closed_form, kRoot);
  o.verdict_z = number_or(s.cfg, "verdict_z", o.verdict_z, kRoot);
  o.slack_half_widths = number_or(s.cfg, "slack_half_widths", o.slack_half_widths, kRoot);
  o.seed = s.seed;
  o.workers = g.workers;

  try {
    check_premise(o.bound, profile, *s.scheme);
  } catch (const InvalidArgument& e) {
    throw ConfigError(ppath, e.what());
  }
  const ConcentrationReport r =
      run_concentration(*s.law, *s.learner, *s.scheme, profile, o);
  json report = concentration_report_to_json(r);
  if (provenance) report["profile_estimate"] = *provenance;
  emit(g, report, out);
  if (!g.csv.empty()) write_text(g.csv, concentration_csv(r), out);
  return r.fail_count > 0 ? kExitFail : kExitOk;
}

int cmd_split(const Globals& g, std::ostream& out) {
  Setup s = setup(g, {"law", "learner", "n", "p_grid", "scheme_kind", "mc_draws",
                      "replicates", "oracle_draws", "closed_form", "theory",
                      "lambda", "delta", "seed"},
                  false);
  SplitOptions o;
  o.p_grid = numbers_at(require_key(s.cfg, "p_grid", kRoot), json_child(kRoot, "p_grid"));
  if (s.cfg.contains("scheme_kind")) {
    const std::string k = string_at(s.cfg.at("scheme_kind"), json_child(kRoot, "scheme_kind"));
    if (k != "auto") {
      try {
        o.scheme_kind = scheme_kind_from_string(k);
      } catch (const InvalidArgument& e) {
        throw ConfigError(json_child(kRoot, "scheme_kind"), e.what());
      }
    }
  }
  o.mc_draws = size_or(s.cfg, "mc_draws", o.mc_draws, kRoot);
  o.replicates = size_or(s.cfg, "replicates", o.replicates, kRoot);
  o.oracle_draws = size_or(s.cfg, "oracle_draws", o.oracle_draws, kRoot);
  o.closed_form = bool_or(s.cfg, "closed_form", o.closed_form, kRoot);
  if (s.cfg.contains("theory")) {
    const std::string t = string_at(s.cfg.at("theory"), json_child(kRoot, "theory"));
    try {
      o.theory = l1_kind_from_string(t);
    } catch (const InvalidArgument& e) {
      throw ConfigError(json_child(kRoot, "theory"), e.what());
    }
  }
  o.lambda = number_or(s.cfg, "lambda", o.lambda, kRoot);
  o.delta = number_or(s.cfg, "delta", o.delta, kRoot);
  o.seed = s.seed;
  o.workers = g.workers;
  SplitReport r;
  try {
    r = run_split_sweep(*s.law, *s.learner, s.n, o);
  } catch (const FoldError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(json_child(kRoot, "p_grid"), e.what());
  }
  emit(g, split_report_to_json(r), out);
  if (!g.csv.empty()) {
    std::ostringstream csv;
    csv << "p,nu,scheme,gap_mean,gap_stderr,l1_bound\n";
    for (const SplitRow& row : r.rows) {
      csv << format_double(row.p) << ',' << row.nu << ',' << row.scheme << ','
          << format_double(row.gap.mean) << ',' << format_double(row.gap.std_error)
          << ',' << format_double(row.l1_bound) << '\n';
    }
    write_text(g.csv, csv.str(), out);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-validation stability bounds: evaluators and Monte Carlo checks",
               "stabcv"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for every random stream");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Report path, - for standard output");
  app.add_option("--csv", g.csv, "Also write a CSV table here");

  std::string formula;
  std::string params;
  auto* bounds = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  bounds->require_subcommand(1);
  auto* bounds_eval = bounds->add_subcommand("eval", "Print a one-row CSV");
  bounds_eval->add_option("--formula", formula, "Formula name")->required();
  bounds_eval->add_option("--params", params, "Parameters as a JSON object");

  auto* scheme = app.add_subcommand("scheme", "Resampling schemes");
  scheme->require_subcommand(1);
  auto* scheme_build = scheme->add_subcommand("build", "Build and print a scheme");

  auto* cv = app.add_subcommand("cv", "Error estimates");
  cv->require_subcommand(1);
  auto* cv_run = cv->add_subcommand("run", "CV, resubstitution and oracle risk");

  auto* stability = app.add_subcommand("stability", "Stability profiles");
  stability->require_subcommand(1);
  auto* stability_estimate = stability->add_subcommand("estimate", "Estimate a profile");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->require_subcommand(1);
  auto* concentration = experiment->add_subcommand("concentration", "Tail bound check");
  auto* split = experiment->add_subcommand("split", "Split-fraction sweep");
  auto* audit = experiment->add_subcommand("audit", "Stability audit");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the embedded examples");

  for (CLI::App* c : {scheme_build, cv_run, stability_estimate, concentration, split,
                      audit}) {
    c->add_option("--config", g.config, "Config JSON file")->required();
  }
  for (CLI::App* c : {bounds, bounds_eval, scheme, scheme_build, cv, cv_run, stability,
                      stability_estimate, experiment, concentration, split, audit,
                      selftest_cmd}) {
    c->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "stabcv: " << e.what() << '\n';
    return kExitConfig;
  }
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (*bounds_eval) return cmd_bounds_eval(formula, params, g, out);
    if (*scheme_build) return cmd_scheme_build(g, out);
    if (*cv_run) return cmd_cv_run(g, out);
    if (*stability_estimate) return cmd_stability(g, out, false);
    if (*audit) return cmd_stability(g, out, true);
    if (*concentration) return cmd_concentration(g, out);
    if (*split) return cmd_split(g, out);
    if (*selftest_cmd) return selftest(out) ? kExitOk : kExitFail;
  } catch (const ConfigError& e) {
    err << "stabcv: config error at " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "stabcv: " << e.what() << '\n';
    return kExitConfig;
  }
  err << "stabcv: no command given\n";
  return kExitConfig;
}

}  // namespace stabcv::cli
