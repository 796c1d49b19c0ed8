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

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entropylab/functionals.hpp"
#include "entropylab/random.hpp"
#include "entropylab/serialization.hpp"

namespace entropylab {

/// Seed used when neither the caller nor ENTROPYLAB_SEED supplies one.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Shape of one sampled instance: k contraction blocks of size m x n.
struct Dims {
  Index k = 1;
  Index m = 1;
  Index n = 1;

  friend bool operator==(const Dims&, const Dims&) = default;
};

struct CheckConfig {
  std::size_t trials = 100;
  RngSeed seed{kDefaultSeed};
  /// Trial i uses dims[i % dims.size()].
  std::vector<Dims> dims{{1, 2, 2}};
  double tol_abs = 1e-9;
  double tol_rel = 1e-9;
  /// Fixed segment weights; one extra uniform weight is drawn per trial when
  /// random_lambda is set.
  std::vector<double> lambda_samples{0.25, 0.5, 0.75};
  bool random_lambda = true;
  EigenRange eig_range{0.05, 5.0};
  /// Entry scale of sampled Hermitian matrices (L and the B_i).
  double hermitian_scale = 1.0;
  /// Block-lift cross-check: |lift - (direct + (k-1) n)| <= lift_tol_rel (1 + |direct|).
  double lift_tol_rel = 1e-9;
  /// Minimum excess for a Golden-Thompson route witness.
  double witness_margin = 1e-6;
  std::vector<double> homogeneity_factors{0.5, 2.0, 10.0};
  /// Strict-contraction family of the homogeneity check: ||sum H_i* H_i||
  /// equals this bound, and some instance must break homogeneity by more
  /// than homogeneity_break_min.
  double strict_contraction_bound = 0.9;
  double homogeneity_break_min = 1e-3;
  /// Finite-difference steps of the derivative-limit check, largest first.
  std::array<double, 3> derivative_steps{1e-2, 1e-3, 1e-4};
  /// Threads used to run trials; 0 picks the hardware concurrency. Results
  /// do not depend on this value.
  std::size_t workers = 1;

  /// Throws Domain if any field is out of range.
  void validate() const;
};

enum class CheckKind {
  ShConvexity,
  PhiConcavity,
  MultiConcavity,
  GtJensen,
  GibbsIdentity,
  DerivativeLimit,
  GtRouteGap,
  Homogeneity,
};

inline constexpr std::array<CheckKind, 8> kAllChecks{
    CheckKind::ShConvexity,     CheckKind::PhiConcavity, CheckKind::MultiConcavity,
    CheckKind::GtJensen,        CheckKind::GibbsIdentity, CheckKind::DerivativeLimit,
    CheckKind::GtRouteGap,      CheckKind::Homogeneity,
};

std::string_view check_name(CheckKind kind) noexcept;
std::optional<CheckKind> parse_check_name(std::string_view name) noexcept;

/// Trial count and dimension families each check runs with unless overridden.
CheckConfig default_config(CheckKind kind);

/// The functionals a check evaluates. Tests swap entries for corrupted
/// versions to confirm the checks can fail.
struct FunctionalSet {
  std::function<double(const PositiveDefiniteMatrix&, const PositiveDefiniteMatrix&,
                       const ComplexMatrix&)>
      reduced_relative_entropy;
  std::function<double(const PositiveDefiniteMatrix&, const HermitianMatrix&, const ComplexMatrix&)>
      trace_exp_functional;
  std::function<double(const MultiInstance&)> multi_trace_exp;
  std::function<double(const ExponentInstance&)> gt_jensen_lhs;
  std::function<double(const ExponentInstance&)> gt_jensen_rhs;
  std::function<double(const ExponentInstance&)> golden_thompson_route;
  std::function<double(const PositiveDefiniteMatrix&, const PositiveDefiniteMatrix&)>
      gibbs_objective;
  std::function<double(const PositiveDefiniteMatrix&, const PositiveDefiniteMatrix&,
                       const ComplexMatrix&, double)>
      lieb_trace;
  std::function<double(const PositiveDefiniteMatrix&, const PositiveDefiniteMatrix&,
                       const ComplexMatrix&)>
      lieb_trace_derivative_at_zero;

  static FunctionalSet standard();
};

/// One failed comparison (or, for the witness search, one witness).
struct Violation {
  std::size_t trial = 0;
  /// Which comparison inside the trial, e.g. "segment[2]" or "lift[mid1]".
  std::string label;
  /// Error text when the trial raised instead of comparing.
  std::string detail;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  /// Everything needed to recompute the comparison, matrices in matrix JSON.
  Json instance;
};

enum class CheckStatus { Passed, Failed, Inconclusive };

struct CheckReport {
  std::string check_name;
  /// "property": passed means no violations. "witness_search": violations
  /// hold witnesses, passed means at least one was found, and an empty
  /// result is inconclusive rather than failed.
  std::string semantics;
  std::size_t trials_run = 0;
  std::vector<Violation> violations;
  /// Largest lhs - rhs over all comparisons (before tolerance).
  double worst_gap = 0.0;
  bool passed = false;
  CheckStatus status = CheckStatus::Failed;
  /// Check-specific aggregates.
  Json summary = Json::object();

  /// Only property checks with violations count as failures.
  bool is_failure() const noexcept { return status == CheckStatus::Failed; }
};

std::string_view to_string(CheckStatus status) noexcept;
Json to_json(const CheckReport& report);
Json to_json(const CheckConfig& cfg);

/// Segment test of S_H(A|B) = Tr(A log A - H* A H log B - A + B) for joint
/// convexity in (A, B), dims (1, d, d).
CheckReport check_sh_convexity(const CheckConfig& cfg,
                               const FunctionalSet& fns = FunctionalSet::standard());

/// Segment test of A -> Tr exp(L + H* log(A) H) for concavity.
CheckReport check_phi_concavity(const CheckConfig& cfg,
                                const FunctionalSet& fns = FunctionalSet::standard());

/// Segment test of the k-variable functional, each evaluation cross-checked
/// against the block lift.
CheckReport check_multi_concavity(const CheckConfig& cfg,
                                  const FunctionalSet& fns = FunctionalSet::standard());

/// Tr exp(L + sum H_i* B_i H_i) <= Tr(exp(L) sum H_i* exp(B_i) H_i) with
/// sum H_i* H_i = I. Trials rotate through a general family, a
/// Golden-Thompson family (k = 1, H = I) and a Jensen family (L = 0).
CheckReport check_gt_jensen(const CheckConfig& cfg,
                            const FunctionalSet& fns = FunctionalSet::standard());

/// Tr(X log B - X log X + X) <= Tr B with equality at X = B.
CheckReport check_gibbs_identity(const CheckConfig& cfg,
                                 const FunctionalSet& fns = FunctionalSet::standard());

/// Forward differences of p -> Tr(H B^p H* A^(1-p)) converge to the closed
/// form derivative at p = 0.
CheckReport check_derivative_limit(const CheckConfig& cfg,
                                   const FunctionalSet& fns = FunctionalSet::standard());

/// Witness search for Tr(exp(L) exp(sum H_i* B_i H_i)) exceeding
/// Tr(exp(L) sum H_i* exp(B_i) H_i). See CheckReport::semantics.
CheckReport search_gt_route_gap(const CheckConfig& cfg,
                                const FunctionalSet& fns = FunctionalSet::standard());

/// phi(t A_1..t A_k) = t phi(A_1..A_k) when sum H_i* H_i = I, and a strict
/// contraction family breaking it.
CheckReport check_homogeneity(const CheckConfig& cfg,
                              const FunctionalSet& fns = FunctionalSet::standard());

CheckReport run_check(CheckKind kind, const CheckConfig& cfg,
                      const FunctionalSet& fns = FunctionalSet::standard());

/// Rebuilds the instance stored in `v` from its JSON dump and recomputes the
/// gap of the labelled comparison.
double reevaluate_violation(CheckKind kind, const Violation& v, const CheckConfig& cfg,
                            const FunctionalSet& fns = FunctionalSet::standard());

}  // namespace entropylab
