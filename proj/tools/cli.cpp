/* Copyright 2026 The entropylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "entropylab/entropylab.hpp"

namespace entropylab::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kFunctionals{
    "relative_entropy", "reduced_relative_entropy", "lieb_trace",    "lieb_derivative",
    "phi",              "multi_phi",                "gt_jensen_rhs", "gibbs_objective"};

struct EvalOptions {
  std::string functional;
  std::string instance;
  std::optional<double> p;
  std::string out;
};

struct CheckOptions {
  std::string suite;
  std::optional<std::size_t> trials;
  std::optional<std::string> seed;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::vector<std::string> dims;
  std::vector<double> lambdas;
  std::optional<double> hermitian_scale;
  std::optional<double> eig_lo;
  std::optional<double> eig_hi;
  std::optional<std::size_t> workers;
  std::string out_dir;
};

struct OptimizeOptions {
  std::string objective;
  std::string instance;
  std::optional<std::size_t> max_iters;
  std::optional<double> grad_tol;
  std::optional<double> initial_step;
  std::optional<double> backtrack;
  std::optional<double> armijo;
  std::string out;
};

struct GenOptions {
  std::string kind;
  Index dim = 2;
  Index k = 1;
  Index m = 2;
  Index n = 2;
  bool sum_identity = false;
  bool exponents = false;
  std::optional<std::string> seed;
  double lo = 0.05;
  double hi = 5.0;
  double scale = 1.0;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::string>& text) {
  if (!text) return default_seed();
  auto seed = parse_seed(*text);
  if (!seed) throw UsageError("invalid --seed value: " + *text);
  return *seed;
}

Json read_instance(const std::string& path, std::istream& in) {
  if (path == "-") {
    try {
      return Json::parse(in);
    } catch (const Json::parse_error& e) {
      raise(ErrorKind::Parse, std::string("<stdin>: ") + e.what());
    }
  }
  return load_json_file(path);
}

const Json& require_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    raise(ErrorKind::Parse, where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

PositiveDefiniteMatrix pd_field(const Json& j, const char* key, const std::string& where) {
  return pd_from_json(require_field(j, key, where), where + ":" + key);
}

HermitianMatrix hermitian_field(const Json& j, const char* key, const std::string& where) {
  return hermitian_from_json(require_field(j, key, where), where + ":" + key);
}

/// Accepts a single matrix or a one-element list (the k = 1 instance layout).
ComplexMatrix contraction_field(const Json& j, const std::string& where) {
  const Json& h = require_field(j, "H", where);
  if (h.is_array()) {
    if (h.size() != 1) {
      raise(ErrorKind::Dimension, where + ":H: expected a single contraction, got a list of " +
                                      std::to_string(h.size()));
    }
    return matrix_from_json(h[0], where + ":H[0]");
  }
  return matrix_from_json(h, where + ":H");
}

void write_output(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << '\n';
  } else {
    save_json_file(path, j);
  }
}

Dims parse_dims(const std::string& text) {
  Dims d;
  char c1 = 0;
  char c2 = 0;
  std::istringstream is(text);
  long long k = 0, m = 0, n = 0;
  if (!(is >> k >> c1 >> m >> c2 >> n) || c1 != ',' || c2 != ',' || !is.eof() || k < 1 ||
      m < 1 || n < 1) {
    throw UsageError("--dims expects k,m,n with positive integers, got \"" + text + "\"");
  }
  d.k = k;
  d.m = m;
  d.n = n;
  return d;
}

// ---------------------------------------------------------------------------

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::istream& in) {
  const Json j = read_instance(opt.instance, in);
  const std::string& where = opt.instance;
  const std::string& f = opt.functional;
  Json inputs{{"instance_file", opt.instance}, {"instance", j}};
  double value = 0.0;

  if (f == "relative_entropy") {
    value = relative_entropy(pd_field(j, "A", where), pd_field(j, "B", where));
  } else if (f == "reduced_relative_entropy") {
    value = reduced_relative_entropy(pd_field(j, "A", where), pd_field(j, "B", where),
                                     contraction_field(j, where));
  } else if (f == "lieb_trace") {
    std::optional<double> p = opt.p;
    if (!p && j.contains("p") && j.at("p").is_number()) p = j.at("p").get<double>();
    if (!p) throw UsageError("lieb_trace needs --p or a numeric \"p\" field");
    inputs["p"] = *p;
    value = lieb_trace(pd_field(j, "A", where), pd_field(j, "B", where),
                       contraction_field(j, where), *p);
  } else if (f == "lieb_derivative") {
    value = lieb_trace_derivative_at_zero(pd_field(j, "A", where), pd_field(j, "B", where),
                                          contraction_field(j, where));
  } else if (f == "phi") {
    value = trace_exp_functional(pd_field(j, "A", where), hermitian_field(j, "L", where),
                                 contraction_field(j, where));
  } else if (f == "multi_phi") {
    value = multi_trace_exp(multi_instance_from_json(j, where));
  } else if (f == "gt_jensen_rhs") {
    value = gt_jensen_rhs(exponent_instance_from_json(j, where));
  } else if (f == "gibbs_objective") {
    value = gibbs_objective(pd_field(j, "X", where), pd_field(j, "B", where));
  }

  out << format_value(value) << '\n';
  if (!opt.out.empty()) {
    save_json_file(opt.out, Json{{"functional", f}, {"inputs", std::move(inputs)}, {"value", value}});
  }
  return kOk;
}

CheckConfig configure(CheckKind kind, const CheckOptions& opt, std::uint64_t seed) {
  CheckConfig cfg = default_config(kind);
  cfg.seed = RngSeed{seed};
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.tol_abs) cfg.tol_abs = *opt.tol_abs;
  if (opt.tol_rel) cfg.tol_rel = *opt.tol_rel;
  if (!opt.dims.empty()) {
    cfg.dims.clear();
    for (const auto& d : opt.dims) cfg.dims.push_back(parse_dims(d));
  }
  if (!opt.lambdas.empty()) cfg.lambda_samples = opt.lambdas;
  if (opt.hermitian_scale) cfg.hermitian_scale = *opt.hermitian_scale;
  if (opt.eig_lo) cfg.eig_range.lo = *opt.eig_lo;
  if (opt.eig_hi) cfg.eig_range.hi = *opt.eig_hi;
  if (opt.workers) cfg.workers = *opt.workers;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
  return cfg;
}

int cmd_check(const CheckOptions& opt, std::ostream& out) {
  std::vector<CheckKind> kinds;
  if (opt.suite == "all") {
    kinds.assign(kAllChecks.begin(), kAllChecks.end());
  } else if (auto kind = parse_check_name(opt.suite)) {
    kinds.push_back(*kind);
  } else {
    std::string names;
    for (CheckKind k : kAllChecks) names += " " + std::string(check_name(k));
    throw UsageError("unknown check suite \"" + opt.suite + "\"; expected all or one of:" + names);
  }
  const std::uint64_t seed = resolve_seed(opt.seed);

  std::vector<std::pair<CheckKind, CheckConfig>> plan;
  for (CheckKind kind : kinds) plan.emplace_back(kind, configure(kind, opt, seed));

  if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);

  Json summary_checks = Json::array();
  bool any_failed = false;
  std::size_t passed = 0;
  for (const auto& [kind, cfg] : plan) {
    const CheckReport report = run_check(kind, cfg);
    any_failed = any_failed || report.is_failure();
    passed += report.passed;
    out << std::left << std::setw(13) << to_string(report.status) << std::setw(18)
        << report.check_name << " trials=" << report.trials_run
        << " violations=" << report.violations.size() << " worst_gap=" << std::setprecision(6)
        << report.worst_gap << (report.semantics == "witness_search" ? " (witness search)" : "")
        << '\n';
    summary_checks.push_back({{"check", report.check_name},
                              {"semantics", report.semantics},
                              {"status", to_string(report.status)},
                              {"passed", report.passed},
                              {"trials_run", report.trials_run},
                              {"violation_count", report.violations.size()},
                              {"worst_gap", report.worst_gap}});
    if (!opt.out_dir.empty()) {
      save_json_file(fs::path(opt.out_dir) / (report.check_name + ".json"), to_json(report));
    }
  }
  const Json summary{{"seed", seed},
                     {"checks", std::move(summary_checks)},
                     {"checks_passed", passed},
                     {"checks_run", plan.size()},
                     {"all_passed", !any_failed}};
  if (!opt.out_dir.empty()) save_json_file(fs::path(opt.out_dir) / "summary.json", summary);
  out << passed << "/" << plan.size() << " checks passed\n";
  return any_failed ? kViolations : kOk;
}

int cmd_optimize(const OptimizeOptions& opt, std::ostream& out, std::istream& in) {
  const Json j = read_instance(opt.instance, in);
  const std::string& where = opt.instance;
  SolverConfig cfg;
  if (opt.max_iters) cfg.max_iters = *opt.max_iters;
  if (opt.grad_tol) cfg.grad_tol = *opt.grad_tol;
  if (opt.initial_step) cfg.initial_step = *opt.initial_step;
  if (opt.backtrack) cfg.backtrack_factor = *opt.backtrack;
  if (opt.armijo) cfg.armijo_c = *opt.armijo;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }

  Objective objective = opt.objective == "gibbs"
                            ? Objective{GibbsProblem{pd_field(j, "B", where)}}
                            : Objective{PhiProblem{pd_field(j, "A", where),
                                                   hermitian_field(j, "L", where),
                                                   contraction_field(j, where)}};
  const SolverResult result = maximize(objective, cfg);
  Json record = to_json(result);
  record["objective"] = opt.objective;
  record["config"] = to_json(cfg);
  if (opt.out.empty()) {
    out << record.dump(2) << '\n';
  } else {
    save_json_file(opt.out, record);
    out << format_value(result.value) << '\n';
  }
  return kOk;
}

int cmd_gen(const GenOptions& opt, std::ostream& out) {
  Rng rng(RngSeed{resolve_seed(opt.seed)});
  const EigenRange range{opt.lo, opt.hi};
  Json j;
  if (opt.kind == "pd") {
    j = to_json(random_pd(opt.dim, range, rng));
  } else if (opt.kind == "hermitian") {
    j = to_json(random_hermitian(opt.dim, opt.scale, rng));
  } else if (opt.kind == "contraction_tuple") {
    const auto h = random_contraction_tuple(opt.k, opt.m, opt.n, opt.sum_identity, rng);
    j = {{"k", h.k()}, {"m", h.m()}, {"n", h.n()}, {"sum_is_identity", h.sum_is_identity()},
         {"H", to_json(h)}};
  } else {
    auto h = random_contraction_tuple(opt.k, opt.m, opt.n, opt.sum_identity, rng);
    auto l = random_hermitian(opt.n, opt.scale, rng);
    if (opt.exponents) {
      std::vector<HermitianMatrix> b;
      for (Index i = 0; i < opt.k; ++i) b.push_back(random_hermitian(opt.m, opt.scale, rng));
      j = to_json(ExponentInstance{l, h, b});
    } else {
      std::vector<PositiveDefiniteMatrix> a;
      for (Index i = 0; i < opt.k; ++i) a.push_back(random_pd(opt.m, range, rng));
      j = to_json(MultiInstance{l, h, a});
    }
  }
  write_output(opt.out, j, out);
  return kOk;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ENTROPYLAB_SEED")) {
    if (auto seed = parse_seed(env)) return *seed;
  }
  return kDefaultSeed;
}

std::optional<std::uint64_t> parse_seed(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    if (text[0] == '-') return std::nullopt;
    const std::uint64_t v = std::stoull(text, &used, hex ? 16 : 10);
    if (used != text.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string format_value(double value) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(15) << value;
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"entropylab: trace functionals, property checks and variational solvers"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a functional on an instance file");
  eval_cmd->add_option("functional", eval.functional, "Functional name")
      ->required()
      ->check(CLI::IsMember(kFunctionals));
  eval_cmd->add_option("instance", eval.instance, "Instance JSON file, or - for stdin")->required();
  eval_cmd->add_option("--p", eval.p, "Exponent for lieb_trace, in [0, 1]");
  eval_cmd->add_option("--out", eval.out, "Write a JSON record {functional, inputs, value}");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run property checks");
  check_cmd->add_option("suite", check.suite, "Check name or all")->required();
  check_cmd->add_option("--trials", check.trials, "Trials per check");
  check_cmd->add_option("--seed", check.seed, "Seed (decimal or 0x hex)");
  check_cmd->add_option("--tol-abs", check.tol_abs, "Absolute tolerance");
  check_cmd->add_option("--tol-rel", check.tol_rel, "Relative tolerance");
  check_cmd->add_option("--dims", check.dims, "Instance shape k,m,n (repeatable)");
  check_cmd->add_option("--lambda", check.lambdas, "Segment weight in (0, 1) (repeatable)");
  check_cmd->add_option("--hermitian-scale", check.hermitian_scale, "Scale of sampled L and B_i");
  check_cmd->add_option("--eig-lo", check.eig_lo, "Smallest sampled PD eigenvalue");
  check_cmd->add_option("--eig-hi", check.eig_hi, "Largest sampled PD eigenvalue");
  check_cmd->add_option("--workers", check.workers, "Worker threads (0 = all cores)");
  check_cmd->add_option("--out-dir", check.out_dir, "Directory for per-check JSON reports");

  OptimizeOptions optimize;
  auto* opt_cmd = app.add_subcommand("optimize", "Maximize a variational objective");
  opt_cmd->add_option("objective", optimize.objective, "gibbs or phi")
      ->required()
      ->check(CLI::IsMember({"gibbs", "phi"}));
  opt_cmd->add_option("instance", optimize.instance, "Instance JSON file, or - for stdin")->required();
  opt_cmd->add_option("--max-iters", optimize.max_iters, "Iteration cap");
  opt_cmd->add_option("--grad-tol", optimize.grad_tol, "Gradient Frobenius norm tolerance");
  opt_cmd->add_option("--initial-step", optimize.initial_step, "First trial step");
  opt_cmd->add_option("--backtrack", optimize.backtrack, "Step shrink factor in (0, 1)");
  opt_cmd->add_option("--armijo", optimize.armijo, "Sufficient increase constant in (0, 1)");
  opt_cmd->add_option("--out", optimize.out, "Write the SolverResult JSON here");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random instances");
  gen_cmd->add_option("kind", gen.kind, "pd, hermitian, contraction_tuple or multi_instance")
      ->required()
      ->check(CLI::IsMember({"pd", "hermitian", "contraction_tuple", "multi_instance"}));
  gen_cmd->add_option("--dim", gen.dim, "Matrix size for pd and hermitian")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--k", gen.k, "Number of contraction blocks")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Block rows")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Block columns")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--sum-identity", gen.sum_identity, "Make sum H_i* H_i = I_n");
  gen_cmd->add_flag("--exponents", gen.exponents, "multi_instance with Hermitian B_i instead of A_i");
  gen_cmd->add_option("--seed", gen.seed, "Seed (decimal or 0x hex)");
  gen_cmd->add_option("--lo", gen.lo, "Smallest eigenvalue for PD matrices");
  gen_cmd->add_option("--hi", gen.hi, "Largest eigenvalue for PD matrices");
  gen_cmd->add_option("--scale", gen.scale, "Entry scale for Hermitian matrices");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, out, in);
    if (*check_cmd) return cmd_check(check, out);
    if (*opt_cmd) return cmd_optimize(optimize, out, in);
    if (*gen_cmd) return cmd_gen(gen, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kNumerical : kUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON content: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace entropylab::cli
