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

#include "entropylab/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace entropylab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Role {
  /// lhs <= rhs + tolerance.
  Inequality,
  /// lhs < rhs.
  Strict,
  /// Recorded for aggregation only.
  Observation,
};

struct Comparison {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  Role role = Role::Inequality;

  double gap() const { return lhs - rhs; }
  bool violated() const {
    switch (role) {
      case Role::Inequality: return !(lhs <= rhs + tolerance);
      case Role::Strict: return !(lhs < rhs);
      case Role::Observation: return false;
    }
    return false;
  }
};

struct TrialResult {
  std::vector<Violation> violations;
  double worst_gap = kNegInf;
  /// Largest value per observation label.
  std::map<std::string, double> observations;
  std::vector<std::string> errors;
};

double tolerance_for(const CheckConfig& cfg, std::initializer_list<double> values) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  return cfg.tol_abs + cfg.tol_rel * scale;
}

std::vector<double> draw_lambdas(const CheckConfig& cfg, Rng& rng) {
  std::vector<double> out = cfg.lambda_samples;
  if (cfg.random_lambda) out.push_back(rng.open_unit());
  return out;
}

std::string indexed(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

Json dump_list(const std::vector<PositiveDefiniteMatrix>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<PositiveDefiniteMatrix> load_pd_list(const Json& j, const std::string& context) {
  std::vector<PositiveDefiniteMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(pd_from_json(j[i], indexed(context.c_str(), i)));
  return out;
}

std::vector<PositiveDefiniteMatrix> sample_pd_list(Index count, Index dim, const CheckConfig& cfg,
                                                   Rng& rng) {
  std::vector<PositiveDefiniteMatrix> out;
  for (Index i = 0; i < count; ++i) out.push_back(random_pd(dim, cfg.eig_range, rng));
  return out;
}

ContractionTuple scaled(const ContractionTuple& h, double factor) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : h.blocks()) blocks.emplace_back(factor * b.dense());
  return ContractionTuple(std::move(blocks), false);
}

/// Isometric tuples on even trials when the shape allows it, strict
/// contractions otherwise.
ContractionTuple sample_tuple(Dims d, std::size_t trial, Rng& rng) {
  const bool isometry = trial % 2 == 0 && d.k * d.m >= d.n;
  return random_contraction_tuple(d.k, d.m, d.n, isometry, rng);
}

// ---------------------------------------------------------------------------
// Instance families. Each provides sample / dump / load / evaluate.

struct ShConvexity {
  struct Instance {
    ComplexMatrix H;
    PositiveDefiniteMatrix A1, B1, A2, B2;
    std::vector<double> lambdas;
  };

  static Instance sample(Rng& rng, Dims d, std::size_t trial, const CheckConfig& cfg) {
    auto h = sample_tuple({1, d.m, d.n}, trial, rng)[0];
    auto a1 = random_pd(d.m, cfg.eig_range, rng);
    auto b1 = random_pd(d.n, cfg.eig_range, rng);
    auto a2 = random_pd(d.m, cfg.eig_range, rng);
    auto b2 = random_pd(d.n, cfg.eig_range, rng);
    return {h, a1, b1, a2, b2, draw_lambdas(cfg, rng)};
  }

  static Json dump(const Instance& x) {
    return {{"H", to_json(x.H)},   {"A1", to_json(x.A1)}, {"B1", to_json(x.B1)},
            {"A2", to_json(x.A2)}, {"B2", to_json(x.B2)}, {"lambdas", x.lambdas}};
  }

  static Instance load(const Json& j) {
    return {matrix_from_json(j.at("H"), "H"),    pd_from_json(j.at("A1"), "A1"),
            pd_from_json(j.at("B1"), "B1"),      pd_from_json(j.at("A2"), "A2"),
            pd_from_json(j.at("B2"), "B2"),      j.at("lambdas").get<std::vector<double>>()};
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    const double s1 = f.reduced_relative_entropy(x.A1, x.B1, x.H);
    const double s2 = f.reduced_relative_entropy(x.A2, x.B2, x.H);
    std::vector<Comparison> out;
    for (std::size_t j = 0; j < x.lambdas.size(); ++j) {
      const double w = x.lambdas[j];
      const double mid = f.reduced_relative_entropy(mix(x.A1, x.A2, w), mix(x.B1, x.B2, w), x.H);
      const double chord = w * s1 + (1.0 - w) * s2;
      out.push_back({indexed("segment", j), mid, chord, tolerance_for(cfg, {mid, s1, s2})});
    }
    return out;
  }
};

struct PhiConcavity {
  struct Instance {
    PositiveDefiniteMatrix A1, A2;
    HermitianMatrix L;
    ComplexMatrix H;
    std::vector<double> lambdas;
  };

  static Instance sample(Rng& rng, Dims d, std::size_t trial, const CheckConfig& cfg) {
    auto h = sample_tuple({1, d.m, d.n}, trial, rng)[0];
    auto l = random_hermitian(d.n, cfg.hermitian_scale, rng);
    auto a1 = random_pd(d.m, cfg.eig_range, rng);
    auto a2 = random_pd(d.m, cfg.eig_range, rng);
    return {a1, a2, l, h, draw_lambdas(cfg, rng)};
  }

  static Json dump(const Instance& x) {
    return {{"A1", to_json(x.A1)}, {"A2", to_json(x.A2)}, {"L", to_json(x.L)},
            {"H", to_json(x.H)},   {"lambdas", x.lambdas}};
  }

  static Instance load(const Json& j) {
    return {pd_from_json(j.at("A1"), "A1"), pd_from_json(j.at("A2"), "A2"),
            hermitian_from_json(j.at("L"), "L"), matrix_from_json(j.at("H"), "H"),
            j.at("lambdas").get<std::vector<double>>()};
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    const double p1 = f.trace_exp_functional(x.A1, x.L, x.H);
    const double p2 = f.trace_exp_functional(x.A2, x.L, x.H);
    std::vector<Comparison> out;
    for (std::size_t j = 0; j < x.lambdas.size(); ++j) {
      const double w = x.lambdas[j];
      const double mid = f.trace_exp_functional(mix(x.A1, x.A2, w), x.L, x.H);
      const double chord = w * p1 + (1.0 - w) * p2;
      out.push_back({indexed("segment", j), chord, mid, tolerance_for(cfg, {mid, p1, p2})});
    }
    return out;
  }
};

struct MultiConcavity {
  struct Instance {
    HermitianMatrix L;
    ContractionTuple H;
    std::vector<PositiveDefiniteMatrix> A1, A2;
    std::vector<double> lambdas;
  };

  static Instance sample(Rng& rng, Dims d, std::size_t trial, const CheckConfig& cfg) {
    auto h = sample_tuple(d, trial, rng);
    auto l = random_hermitian(d.n, cfg.hermitian_scale, rng);
    auto a1 = sample_pd_list(d.k, d.m, cfg, rng);
    auto a2 = sample_pd_list(d.k, d.m, cfg, rng);
    return {l, h, a1, a2, draw_lambdas(cfg, rng)};
  }

  static Json dump(const Instance& x) {
    return {{"L", to_json(x.L)},          {"H", to_json(x.H)},
            {"A1", dump_list(x.A1)},      {"A2", dump_list(x.A2)},
            {"sum_is_identity", x.H.sum_is_identity()}, {"lambdas", x.lambdas}};
  }

  static Instance load(const Json& j) {
    return {hermitian_from_json(j.at("L"), "L"),
            contraction_from_json(j.at("H"), j.at("sum_is_identity").get<bool>(), "H"),
            load_pd_list(j.at("A1"), "A1"), load_pd_list(j.at("A2"), "A2"),
            j.at("lambdas").get<std::vector<double>>()};
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    std::vector<Comparison> out;
    const double offset = static_cast<double>((x.H.k() - 1) * x.H.n());
    auto eval = [&](const std::vector<PositiveDefiniteMatrix>& a, const std::string& tag) {
      const MultiInstance inst{x.L, x.H, a};
      const double direct = f.multi_trace_exp(inst);
      const double lifted = block_lift_trace(block_lift(inst));
      out.push_back({"lift[" + tag + "]", std::abs(lifted - (direct + offset)), 0.0,
                     cfg.lift_tol_rel * (1.0 + std::abs(direct))});
      return direct;
    };
    const double p1 = eval(x.A1, "A1");
    const double p2 = eval(x.A2, "A2");
    for (std::size_t j = 0; j < x.lambdas.size(); ++j) {
      const double w = x.lambdas[j];
      std::vector<PositiveDefiniteMatrix> mid;
      for (std::size_t i = 0; i < x.A1.size(); ++i) mid.push_back(mix(x.A1[i], x.A2[i], w));
      const double pm = eval(mid, indexed("mid", j));
      const double chord = w * p1 + (1.0 - w) * p2;
      out.push_back({indexed("segment", j), chord, pm, tolerance_for(cfg, {pm, p1, p2})});
    }
    return out;
  }
};

struct GtJensen {
  enum class Family { General, GoldenThompson, Jensen };

  struct Instance {
    ExponentInstance data;
    Family family;
  };

  static const char* family_name(Family f) {
    switch (f) {
      case Family::General: return "general";
      case Family::GoldenThompson: return "golden_thompson";
      case Family::Jensen: return "jensen";
    }
    return "general";
  }

  static Instance sample(Rng& rng, Dims d, std::size_t trial, const CheckConfig& cfg) {
    const auto family = static_cast<Family>(trial % 3);
    if (family == Family::GoldenThompson) {
      auto h = ContractionTuple::single(ComplexMatrix::identity(d.n), true);
      auto l = random_hermitian(d.n, cfg.hermitian_scale, rng);
      std::vector<HermitianMatrix> b{random_hermitian(d.n, cfg.hermitian_scale, rng)};
      return {{l, h, b}, family};
    }
    auto h = random_contraction_tuple(d.k, d.m, d.n, true, rng);
    auto l = family == Family::Jensen ? HermitianMatrix::zero(d.n)
                                      : random_hermitian(d.n, cfg.hermitian_scale, rng);
    std::vector<HermitianMatrix> b;
    for (Index i = 0; i < d.k; ++i) b.push_back(random_hermitian(d.m, cfg.hermitian_scale, rng));
    return {{l, h, b}, family};
  }

  static Json dump(const Instance& x) {
    Json j = to_json(x.data);
    j["family"] = family_name(x.family);
    return j;
  }

  static Instance load(const Json& j) {
    const std::string name = j.at("family").get<std::string>();
    Family family = Family::General;
    if (name == "golden_thompson") family = Family::GoldenThompson;
    if (name == "jensen") family = Family::Jensen;
    return {exponent_instance_from_json(j, "instance"), family};
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    const double lhs = f.gt_jensen_lhs(x.data);
    const double rhs = f.gt_jensen_rhs(x.data);
    return {{family_name(x.family), lhs, rhs, tolerance_for(cfg, {lhs, rhs})}};
  }
};

struct GibbsIdentity {
  static constexpr Index kTrialPoints = 3;

  struct Instance {
    PositiveDefiniteMatrix B;
    std::vector<PositiveDefiniteMatrix> X;
  };

  static Instance sample(Rng& rng, Dims d, std::size_t, const CheckConfig& cfg) {
    auto b = random_pd(d.n, cfg.eig_range, rng);
    return {b, sample_pd_list(kTrialPoints, d.n, cfg, rng)};
  }

  static Json dump(const Instance& x) { return {{"B", to_json(x.B)}, {"X", dump_list(x.X)}}; }

  static Instance load(const Json& j) {
    return {pd_from_json(j.at("B"), "B"), load_pd_list(j.at("X"), "X")};
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    const double trace_b = x.B.trace();
    std::vector<Comparison> out;
    for (std::size_t j = 0; j < x.X.size(); ++j) {
      const double value = f.gibbs_objective(x.X[j], x.B);
      out.push_back({indexed("upper", j), value, trace_b, tolerance_for(cfg, {value, trace_b})});
    }
    const double at_b = f.gibbs_objective(x.B, x.B);
    out.push_back({"equality", std::abs(at_b - trace_b), 0.0, tolerance_for(cfg, {at_b, trace_b})});
    return out;
  }
};

struct DerivativeLimit {
  struct Instance {
    PositiveDefiniteMatrix A, B;
    ComplexMatrix H;
  };

  static Instance sample(Rng& rng, Dims d, std::size_t trial, const CheckConfig& cfg) {
    auto h = sample_tuple({1, d.m, d.n}, trial, rng)[0];
    auto a = random_pd(d.m, cfg.eig_range, rng);
    auto b = random_pd(d.n, cfg.eig_range, rng);
    return {a, b, h};
  }

  static Json dump(const Instance& x) {
    return {{"A", to_json(x.A)}, {"B", to_json(x.B)}, {"H", to_json(x.H)}};
  }

  static Instance load(const Json& j) {
    return {pd_from_json(j.at("A"), "A"), pd_from_json(j.at("B"), "B"),
            matrix_from_json(j.at("H"), "H")};
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    const double t0 = f.lieb_trace(x.A, x.B, x.H, 0.0);
    const double derivative = f.lieb_trace_derivative_at_zero(x.A, x.B, x.H);
    std::array<double, 3> err{};
    for (std::size_t i = 0; i < err.size(); ++i) {
      const double p = cfg.derivative_steps[i];
      err[i] = std::abs((f.lieb_trace(x.A, x.B, x.H, p) - t0) / p - derivative);
    }
    const double scale = std::max({1.0, std::abs(t0), std::abs(derivative)});
    return {
        {"decrease", err[1], err[0], 0.0, Role::Strict},
        // The smallest step may sit on the round-off floor; allow a factor 10.
        {"floor", err[2], 10.0 * err[1], 0.0, Role::Strict},
        {"limit", err[2], 1e-2 * scale, 0.0, Role::Inequality},
    };
  }
};

struct Homogeneity {
  struct Instance {
    MultiInstance data;
    ContractionTuple strict;
  };

  static Instance sample(Rng& rng, Dims d, std::size_t, const CheckConfig& cfg) {
    auto h = random_contraction_tuple(d.k, d.m, d.n, true, rng);
    auto l = random_hermitian(d.n, cfg.hermitian_scale, rng);
    auto a = sample_pd_list(d.k, d.m, cfg, rng);
    auto strict = scaled(h, std::sqrt(cfg.strict_contraction_bound));
    return {{l, h, a}, strict};
  }

  static Json dump(const Instance& x) {
    Json j = to_json(x.data);
    j["strict_H"] = to_json(x.strict);
    return j;
  }

  static Instance load(const Json& j) {
    return {multi_instance_from_json(j, "instance"),
            contraction_from_json(j.at("strict_H"), false, "strict_H")};
  }

  static std::vector<PositiveDefiniteMatrix> dilate(const std::vector<PositiveDefiniteMatrix>& a,
                                                    double t) {
    std::vector<PositiveDefiniteMatrix> out;
    for (const auto& x : a) out.push_back(PositiveDefiniteMatrix(HermitianMatrix::symmetrize(t * x.dense()), 0.0));
    return out;
  }

  static std::vector<Comparison> evaluate(const Instance& x, const CheckConfig& cfg,
                                          const FunctionalSet& f) {
    std::vector<Comparison> out;
    const double base = f.multi_trace_exp(x.data);
    const MultiInstance strict{x.data.L, x.strict, x.data.A};
    const double strict_base = f.multi_trace_exp(strict);
    for (std::size_t j = 0; j < cfg.homogeneity_factors.size(); ++j) {
      const double t = cfg.homogeneity_factors[j];
      const auto a_t = dilate(x.data.A, t);
      const double value = f.multi_trace_exp({x.data.L, x.data.H, a_t});
      out.push_back({indexed("factor", j), std::abs(value - t * base), 0.0,
                     cfg.tol_rel * t * std::abs(base)});
      const double strict_value = f.multi_trace_exp({x.data.L, x.strict, a_t});
      out.push_back({"strict", std::abs(strict_value - t * strict_base), 0.0, 0.0,
                     Role::Observation});
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Trial driver.

template <typename Trial>
std::vector<TrialResult> run_trials(const CheckConfig& cfg, Trial&& trial) {
  std::vector<TrialResult> results(cfg.trials);
  std::size_t workers = cfg.workers == 0 ? std::thread::hardware_concurrency() : cfg.workers;
  workers = std::clamp<std::size_t>(workers, 1, cfg.trials);
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.trials; ++i) results[i] = trial(i);
    return results;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < cfg.trials; i += workers) results[i] = trial(i);
    });
  }
  return results;
}

Violation make_violation(std::size_t trial, const Comparison& c, const Json& instance) {
  Violation v;
  v.trial = trial;
  v.label = c.label;
  v.lhs = c.lhs;
  v.rhs = c.rhs;
  v.gap = c.gap();
  v.tolerance = c.tolerance;
  v.instance = instance;
  return v;
}

Violation error_violation(std::size_t trial, const Error& e, Json instance) {
  Violation v;
  v.trial = trial;
  v.label = "error";
  v.detail = e.what();
  v.lhs = v.rhs = v.gap = std::numeric_limits<double>::quiet_NaN();
  v.instance = std::move(instance);
  return v;
}

Dims dims_for(const CheckConfig& cfg, std::size_t trial) { return cfg.dims[trial % cfg.dims.size()]; }

template <typename Family>
TrialResult run_family_trial(const CheckConfig& cfg, const FunctionalSet& fns, std::size_t i) {
  TrialResult r;
  Rng rng(cfg.seed.derive(i));
  Json dump;
  try {
    // Evaluate the instance as reloaded from its dump so a stored violation
    // reproduces bit for bit.
    dump = Family::dump(Family::sample(rng, dims_for(cfg, i), i, cfg));
    const auto inst = Family::load(dump);
    for (const auto& c : Family::evaluate(inst, cfg, fns)) {
      if (c.role == Role::Observation) {
        auto [it, fresh] = r.observations.emplace(c.label, c.lhs);
        if (!fresh) it->second = std::max(it->second, c.lhs);
        continue;
      }
      r.worst_gap = std::max(r.worst_gap, c.gap());
      if (c.violated()) r.violations.push_back(make_violation(i, c, dump));
    }
  } catch (const Error& e) {
    r.violations.push_back(error_violation(i, e, std::move(dump)));
    r.errors.push_back(e.what());
  }
  return r;
}

CheckReport collect(CheckKind kind, std::string semantics, const CheckConfig& cfg,
                    std::vector<TrialResult>& results) {
  CheckReport report;
  report.check_name = std::string(check_name(kind));
  report.semantics = std::move(semantics);
  report.trials_run = results.size();
  report.worst_gap = kNegInf;
  std::size_t errors = 0;
  for (auto& r : results) {
    report.worst_gap = std::max(report.worst_gap, r.worst_gap);
    errors += r.errors.size();
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
  }
  if (report.worst_gap == kNegInf) report.worst_gap = 0.0;
  report.summary["errors"] = errors;
  report.summary["config"] = to_json(cfg);
  return report;
}

void finish_property(CheckReport& report) {
  report.passed = report.violations.empty();
  report.status = report.passed ? CheckStatus::Passed : CheckStatus::Failed;
}

template <typename Family>
CheckReport run_property(CheckKind kind, const CheckConfig& cfg, const FunctionalSet& fns) {
  cfg.validate();
  auto results = run_trials(cfg, [&](std::size_t i) { return run_family_trial<Family>(cfg, fns, i); });
  auto report = collect(kind, "property", cfg, results);
  finish_property(report);
  return report;
}

template <typename Family>
double reevaluate_family(const Violation& v, const CheckConfig& cfg, const FunctionalSet& fns) {
  const auto inst = Family::load(v.instance);
  for (const auto& c : Family::evaluate(inst, cfg, fns)) {
    if (c.label == v.label && c.role != Role::Observation) return c.gap();
  }
  raise(ErrorKind::Parse, "no comparison labelled \"" + v.label + "\" in re-evaluated instance");
}

// ---------------------------------------------------------------------------
// Golden-Thompson route witness search.

struct RouteCandidate {
  ExponentInstance data;
  std::string label;
  double gap = 0.0;
  double route = 0.0;
  double rhs = 0.0;
};

RouteCandidate evaluate_route(ExponentInstance data, std::string label, const FunctionalSet& f) {
  const double route = f.golden_thompson_route(data);
  const double rhs = f.gt_jensen_rhs(data);
  return {std::move(data), std::move(label), route - rhs, route, rhs};
}

/// Points L along the top eigenvector of exp(S) - sum H_i* exp(B_i) H_i,
/// S = sum H_i* B_i H_i. When that difference has a positive eigenvalue the
/// weight c makes Tr(exp(L) (exp(S) - sum ..)) exceed the margin.
std::optional<HermitianMatrix> steered_exponent(const ExponentInstance& data, double margin) {
  const Index n = data.H.n();
  DenseMatrix s = DenseMatrix::Zero(n, n);
  DenseMatrix averaged = DenseMatrix::Zero(n, n);
  for (std::size_t i = 0; i < data.B.size(); ++i) {
    const DenseMatrix& h = data.H[i].dense();
    s.noalias() += h.adjoint() * data.B[i].dense() * h;
    averaged.noalias() += h.adjoint() * matrix_exp(data.B[i]).dense() * h;
  }
  const DenseMatrix diff = matrix_exp(HermitianMatrix::symmetrize(s)).dense() - averaged;
  const auto spectrum = spectral_decompose(HermitianMatrix::symmetrize(diff));
  const double top = spectrum.eigenvalues[spectrum.dim() - 1];
  const double size = diff.cwiseAbs().maxCoeff();
  if (!(top > 1e-8 * (1.0 + size))) return std::nullopt;
  const double deficit = std::max(0.0, -diff.trace().real());
  const double weight = std::min(30.0, std::log1p(2.0 * (deficit + margin) / top));
  const DenseMatrix v = spectrum.eigenvectors.col(spectrum.dim() - 1);
  return HermitianMatrix::symmetrize(weight * v * v.adjoint());
}

TrialResult route_trial(const CheckConfig& cfg, const FunctionalSet& fns, std::size_t i) {
  TrialResult r;
  Rng rng(cfg.seed.derive(i));
  const Dims d = dims_for(cfg, i);
  try {
    auto h = random_contraction_tuple(d.k, d.m, d.n, true, rng);
    auto l = random_hermitian(d.n, cfg.hermitian_scale, rng);
    std::vector<HermitianMatrix> b;
    for (Index j = 0; j < d.k; ++j) b.push_back(random_hermitian(d.m, cfg.hermitian_scale, rng));
    ExponentInstance data{l, h, b};

    auto best = evaluate_route(data, "random", fns);
    r.worst_gap = best.gap;
    if (!(best.gap > cfg.witness_margin)) {
      if (auto steer = steered_exponent(data, cfg.witness_margin)) {
        auto steered = evaluate_route({*steer, data.H, data.B}, "steered", fns);
        r.worst_gap = std::max(r.worst_gap, steered.gap);
        best = std::move(steered);
      }
    }
    if (best.gap > cfg.witness_margin) {
      Violation w;
      w.trial = i;
      w.label = best.label;
      w.lhs = best.route;
      w.rhs = best.rhs;
      w.gap = best.gap;
      w.tolerance = cfg.witness_margin;
      w.instance = to_json(best.data);
      r.violations.push_back(std::move(w));
    }
  } catch (const Error& e) {
    r.errors.push_back(e.what());
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

void CheckConfig::validate() const {
  auto fail = [](const std::string& what) { raise(ErrorKind::Domain, "check config: " + what); };
  if (trials < 1) fail("trials must be at least 1");
  if (dims.empty()) fail("dims must not be empty");
  for (const auto& d : dims) {
    if (d.k < 1 || d.m < 1 || d.n < 1) fail("dims entries must be positive");
  }
  if (!(tol_abs > 0.0) || !(tol_rel > 0.0)) fail("tolerances must be positive");
  for (double w : lambda_samples) {
    if (!(w > 0.0 && w < 1.0)) fail("lambda samples must lie in (0, 1)");
  }
  if (lambda_samples.empty() && !random_lambda) fail("no segment weights configured");
  if (!(eig_range.lo > 0.0) || !(eig_range.hi >= eig_range.lo)) fail("eigenvalue range must satisfy 0 < lo <= hi");
  if (!(hermitian_scale > 0.0)) fail("hermitian scale must be positive");
  if (!(lift_tol_rel > 0.0) || !(witness_margin > 0.0)) fail("lift tolerance and witness margin must be positive");
  for (double t : homogeneity_factors) {
    if (!(t > 0.0)) fail("homogeneity factors must be positive");
  }
  if (!(strict_contraction_bound > 0.0 && strict_contraction_bound < 1.0)) {
    fail("strict contraction bound must lie in (0, 1)");
  }
  if (!(derivative_steps[0] > derivative_steps[1] && derivative_steps[1] > derivative_steps[2] &&
        derivative_steps[2] > 0.0 && derivative_steps[0] <= 1.0)) {
    fail("derivative steps must be decreasing in (0, 1]");
  }
}

std::string_view check_name(CheckKind kind) noexcept {
  switch (kind) {
    case CheckKind::ShConvexity: return "sh_convexity";
    case CheckKind::PhiConcavity: return "phi_concavity";
    case CheckKind::MultiConcavity: return "multi_concavity";
    case CheckKind::GtJensen: return "gt_jensen";
    case CheckKind::GibbsIdentity: return "gibbs_identity";
    case CheckKind::DerivativeLimit: return "derivative_limit";
    case CheckKind::GtRouteGap: return "gt_route_gap";
    case CheckKind::Homogeneity: return "homogeneity";
  }
  return "unknown";
}

std::optional<CheckKind> parse_check_name(std::string_view name) noexcept {
  for (CheckKind kind : kAllChecks) {
    if (check_name(kind) == name) return kind;
  }
  return std::nullopt;
}

CheckConfig default_config(CheckKind kind) {
  CheckConfig cfg;
  auto square = [](Index lo, Index hi) {
    std::vector<Dims> out;
    for (Index d = lo; d <= hi; ++d) out.push_back({1, d, d});
    return out;
  };
  auto rect = [](Index max_m, Index max_n) {
    std::vector<Dims> out;
    for (Index m = 1; m <= max_m; ++m)
      for (Index n = 1; n <= max_n; ++n) out.push_back({1, m, n});
    return out;
  };
  auto tuples = [](Index max_k, Index max_mn, bool isometric) {
    std::vector<Dims> out;
    for (Index k = 1; k <= max_k; ++k)
      for (Index m = 1; m <= max_mn; ++m)
        for (Index n = 1; n <= max_mn; ++n)
          if (!isometric || k * m >= n) out.push_back({k, m, n});
    return out;
  };
  switch (kind) {
    case CheckKind::ShConvexity:
      cfg.trials = 500;
      cfg.dims = square(1, 6);
      break;
    case CheckKind::PhiConcavity:
      cfg.trials = 500;
      cfg.dims = rect(6, 6);
      break;
    case CheckKind::MultiConcavity:
      cfg.trials = 200;
      cfg.dims = tuples(4, 4, false);
      break;
    case CheckKind::GtJensen:
      cfg.trials = 500;
      cfg.dims = tuples(4, 4, true);
      break;
    case CheckKind::GibbsIdentity:
      cfg.trials = 100;
      cfg.dims = square(1, 5);
      break;
    case CheckKind::DerivativeLimit:
      cfg.trials = 100;
      cfg.dims = rect(4, 4);
      break;
    case CheckKind::GtRouteGap:
      cfg.trials = 2000;
      cfg.dims = {{2, 2, 2}};
      cfg.hermitian_scale = 2.0;
      break;
    case CheckKind::Homogeneity:
      cfg.trials = 200;
      cfg.dims = tuples(4, 4, true);
      break;
  }
  return cfg;
}

FunctionalSet FunctionalSet::standard() {
  FunctionalSet f;
  f.reduced_relative_entropy = [](const auto& a, const auto& b, const auto& h) {
    return entropylab::reduced_relative_entropy(a, b, h);
  };
  f.trace_exp_functional = [](const auto& a, const auto& l, const auto& h) {
    return entropylab::trace_exp_functional(a, l, h);
  };
  f.multi_trace_exp = [](const MultiInstance& x) { return entropylab::multi_trace_exp(x); };
  f.gt_jensen_lhs = [](const ExponentInstance& x) { return entropylab::gt_jensen_lhs(x); };
  f.gt_jensen_rhs = [](const ExponentInstance& x) { return entropylab::gt_jensen_rhs(x); };
  f.golden_thompson_route = [](const ExponentInstance& x) {
    return entropylab::golden_thompson_route(x);
  };
  f.gibbs_objective = [](const auto& x, const auto& b) { return entropylab::gibbs_objective(x, b); };
  f.lieb_trace = [](const auto& a, const auto& b, const auto& h, double p) {
    return entropylab::lieb_trace(a, b, h, p);
  };
  f.lieb_trace_derivative_at_zero = [](const auto& a, const auto& b, const auto& h) {
    return entropylab::lieb_trace_derivative_at_zero(a, b, h);
  };
  return f;
}

std::string_view to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "failed";
}

Json to_json(const CheckConfig& cfg) {
  Json dims = Json::array();
  for (const auto& d : cfg.dims) dims.push_back({d.k, d.m, d.n});
  return {{"trials", cfg.trials},
          {"seed", cfg.seed.value},
          {"dims", std::move(dims)},
          {"tol_abs", cfg.tol_abs},
          {"tol_rel", cfg.tol_rel},
          {"lambda_samples", cfg.lambda_samples},
          {"random_lambda", cfg.random_lambda},
          {"eig_range", {cfg.eig_range.lo, cfg.eig_range.hi}},
          {"hermitian_scale", cfg.hermitian_scale},
          {"lift_tol_rel", cfg.lift_tol_rel},
          {"witness_margin", cfg.witness_margin},
          {"homogeneity_factors", cfg.homogeneity_factors},
          {"strict_contraction_bound", cfg.strict_contraction_bound},
          {"homogeneity_break_min", cfg.homogeneity_break_min},
          {"derivative_steps", cfg.derivative_steps}};
}

Json to_json(const CheckReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json j{{"trial", v.trial}, {"label", v.label}, {"lhs", v.lhs},           {"rhs", v.rhs},
           {"gap", v.gap},     {"tolerance", v.tolerance}, {"instance", v.instance}};
    if (!v.detail.empty()) j["detail"] = v.detail;
    violations.push_back(std::move(j));
  }
  return {{"check_name", report.check_name},
          {"semantics", report.semantics},
          {"status", to_string(report.status)},
          {"passed", report.passed},
          {"trials_run", report.trials_run},
          {"worst_gap", report.worst_gap},
          {"violation_count", report.violations.size()},
          {"violations", std::move(violations)},
          {"summary", report.summary}};
}

CheckReport check_sh_convexity(const CheckConfig& cfg, const FunctionalSet& fns) {
  return run_property<ShConvexity>(CheckKind::ShConvexity, cfg, fns);
}

CheckReport check_phi_concavity(const CheckConfig& cfg, const FunctionalSet& fns) {
  return run_property<PhiConcavity>(CheckKind::PhiConcavity, cfg, fns);
}

CheckReport check_multi_concavity(const CheckConfig& cfg, const FunctionalSet& fns) {
  return run_property<MultiConcavity>(CheckKind::MultiConcavity, cfg, fns);
}

CheckReport check_gt_jensen(const CheckConfig& cfg, const FunctionalSet& fns) {
  return run_property<GtJensen>(CheckKind::GtJensen, cfg, fns);
}

CheckReport check_gibbs_identity(const CheckConfig& cfg, const FunctionalSet& fns) {
  return run_property<GibbsIdentity>(CheckKind::GibbsIdentity, cfg, fns);
}

CheckReport check_derivative_limit(const CheckConfig& cfg, const FunctionalSet& fns) {
  return run_property<DerivativeLimit>(CheckKind::DerivativeLimit, cfg, fns);
}

CheckReport check_homogeneity(const CheckConfig& cfg, const FunctionalSet& fns) {
  cfg.validate();
  auto results = run_trials(cfg, [&](std::size_t i) {
    return run_family_trial<Homogeneity>(cfg, fns, i);
  });
  double strict_break = 0.0;
  std::size_t best_trial = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto it = results[i].observations.find("strict");
    if (it != results[i].observations.end() && it->second > strict_break) {
      strict_break = it->second;
      best_trial = i;
    }
  }
  auto report = collect(CheckKind::Homogeneity, "property", cfg, results);
  report.summary["max_strict_deviation"] = strict_break;
  report.summary["max_strict_deviation_trial"] = best_trial;
  if (!(strict_break > cfg.homogeneity_break_min)) {
    Violation v;
    v.trial = best_trial;
    v.label = "strict_contraction_homogeneous";
    v.detail = "no strict-contraction instance broke homogeneity by more than the threshold";
    v.lhs = strict_break;
    v.rhs = cfg.homogeneity_break_min;
    v.gap = cfg.homogeneity_break_min - strict_break;
    report.violations.push_back(std::move(v));
  }
  finish_property(report);
  return report;
}

CheckReport search_gt_route_gap(const CheckConfig& cfg, const FunctionalSet& fns) {
  cfg.validate();
  for (const auto& d : cfg.dims) {
    if (d.k * d.m < d.n) raise(ErrorKind::Dimension, "gt_route_gap needs k*m >= n for every dims entry");
  }
  auto results = run_trials(cfg, [&](std::size_t i) { return route_trial(cfg, fns, i); });
  std::vector<std::string> errors;
  for (const auto& r : results) errors.insert(errors.end(), r.errors.begin(), r.errors.end());
  auto report = collect(CheckKind::GtRouteGap, "witness_search", cfg, results);
  std::size_t steered = 0;
  for (const auto& w : report.violations) steered += w.label == "steered";
  report.summary["witnesses"] = report.violations.size();
  report.summary["steered_witnesses"] = steered;
  report.summary["error_messages"] = errors;
  report.summary["note"] =
      "violations list witnesses where Tr(exp(L) exp(sum H*BH)) exceeds "
      "Tr(exp(L) sum H* exp(B) H); passed means at least one witness was found";
  report.passed = !report.violations.empty();
  if (!errors.empty()) {
    report.status = CheckStatus::Failed;
  } else {
    report.status = report.passed ? CheckStatus::Passed : CheckStatus::Inconclusive;
  }
  return report;
}

CheckReport run_check(CheckKind kind, const CheckConfig& cfg, const FunctionalSet& fns) {
  switch (kind) {
    case CheckKind::ShConvexity: return check_sh_convexity(cfg, fns);
    case CheckKind::PhiConcavity: return check_phi_concavity(cfg, fns);
    case CheckKind::MultiConcavity: return check_multi_concavity(cfg, fns);
    case CheckKind::GtJensen: return check_gt_jensen(cfg, fns);
    case CheckKind::GibbsIdentity: return check_gibbs_identity(cfg, fns);
    case CheckKind::DerivativeLimit: return check_derivative_limit(cfg, fns);
    case CheckKind::GtRouteGap: return search_gt_route_gap(cfg, fns);
    case CheckKind::Homogeneity: return check_homogeneity(cfg, fns);
  }
  raise(ErrorKind::Domain, "unknown check");
}

double reevaluate_violation(CheckKind kind, const Violation& v, const CheckConfig& cfg,
                            const FunctionalSet& fns) {
  try {
    switch (kind) {
      case CheckKind::ShConvexity: return reevaluate_family<ShConvexity>(v, cfg, fns);
      case CheckKind::PhiConcavity: return reevaluate_family<PhiConcavity>(v, cfg, fns);
      case CheckKind::MultiConcavity: return reevaluate_family<MultiConcavity>(v, cfg, fns);
      case CheckKind::GtJensen: return reevaluate_family<GtJensen>(v, cfg, fns);
      case CheckKind::GibbsIdentity: return reevaluate_family<GibbsIdentity>(v, cfg, fns);
      case CheckKind::DerivativeLimit: return reevaluate_family<DerivativeLimit>(v, cfg, fns);
      case CheckKind::Homogeneity: return reevaluate_family<Homogeneity>(v, cfg, fns);
      case CheckKind::GtRouteGap: {
        const auto data = exponent_instance_from_json(v.instance, "witness");
        return fns.golden_thompson_route(data) - fns.gt_jensen_rhs(data);
      }
    }
  } catch (const Json::exception& e) {
    raise(ErrorKind::Parse, std::string("violation instance: ") + e.what());
  }
  raise(ErrorKind::Domain, "unknown check");
}

}  // namespace entropylab
