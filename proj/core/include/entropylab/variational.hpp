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

#include <cstddef>
#include <variant>
#include <vector>

#include "entropylab/functionals.hpp"
#include "entropylab/serialization.hpp"

namespace entropylab {

struct SolverConfig {
  std::size_t max_iters = 500;
  double grad_tol = 1e-8;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;

  void validate() const;
};

struct SolverResult {
  PositiveDefiniteMatrix argmax;
  double value = 0.0;
  std::size_t iterations = 0;
  double final_grad_norm = 0.0;
  bool converged = false;
  /// Objective at the start point and after every accepted step.
  std::vector<double> value_history;
};

/// maximize Tr(X log B - X log X + X) over X > 0.
struct GibbsProblem {
  PositiveDefiniteMatrix B;
};

/// maximize -S_{H*}(X|A) + Tr(X L + A) over X > 0, H the m x n contraction.
struct PhiProblem {
  PositiveDefiniteMatrix A;
  HermitianMatrix L;
  ComplexMatrix H;
};

using Objective = std::variant<GibbsProblem, PhiProblem>;

/// log B - log X.
HermitianMatrix gibbs_gradient(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& b);

/// L + H* log(A) H - log X.
HermitianMatrix phi_gradient(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& a,
                             const HermitianMatrix& l, const ComplexMatrix& h);

/// Gradient ascent in X = exp(Y) from X = I. Each step moves Y along the
/// Euclidean gradient at X, with Armijo backtracking on the true objective,
/// so accepted values never decrease. Stops once the gradient Frobenius norm
/// is at most grad_tol or after max_iters steps.
///
/// Throws NonFiniteObjective when an evaluation produces NaN or Inf.
SolverResult maximize(const Objective& objective, const SolverConfig& cfg = {});

/// Dimension of the optimization variable X.
Index variable_dim(const Objective& objective);

Json to_json(const SolverResult& result);
Json to_json(const SolverConfig& cfg);

}  // namespace entropylab
