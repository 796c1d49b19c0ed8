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

#include <vector>

#include "entropylab/matrix.hpp"

namespace entropylab {

/// Argument tuple of the k-variable trace-exponential functional:
/// L is n x n, H holds k blocks of shape m x n and A holds k m x m matrices.
struct MultiInstance {
  HermitianMatrix L;
  ContractionTuple H;
  std::vector<PositiveDefiniteMatrix> A;
};

/// Same layout as MultiInstance with Hermitian exponents B_i in place of A_i.
struct ExponentInstance {
  HermitianMatrix L;
  ContractionTuple H;
  std::vector<HermitianMatrix> B;
};

/// Throws Dimension unless L.dim = n, every A_i is m x m and |A| = k.
void validate(const MultiInstance& inst);
void validate(const ExponentInstance& inst);

/// Block matrices embedding a k-tuple instance into one variable:
/// A_hat = diag(A_1..A_k) (km x km), L_hat = diag(L, 0, .., 0) (kn x kn),
/// H_hat (km x kn) with H_1..H_k stacked in the first block column.
struct BlockLift {
  PositiveDefiniteMatrix A_hat;
  HermitianMatrix L_hat;
  ComplexMatrix H_hat;
};

/// S(A|B) = Tr(A log A - A log B - A + B).
double relative_entropy(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

/// S_H(A|B) = Tr(A log A - H* A H log B - A + B).
///
/// A is p x p, B is q x q and H is p x q, so H* A H acts on the space of B.
/// Throws NotAContraction if ||H|| > 1 + kContractionTolerance.
double reduced_relative_entropy(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                const ComplexMatrix& h);

/// Tr(H B^p H* A^(1-p)) for p in [0, 1].
double lieb_trace(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                  const ComplexMatrix& h, double p);

/// d/dp Tr(H B^p H* A^(1-p)) at p = 0, i.e. Tr(H log(B) H* A - H H* A log A).
double lieb_trace_derivative_at_zero(const PositiveDefiniteMatrix& a,
                                     const PositiveDefiniteMatrix& b, const ComplexMatrix& h);

/// L + H* log(A) H, the exponent of the trace-exponential functional.
HermitianMatrix trace_exp_exponent(const PositiveDefiniteMatrix& a, const HermitianMatrix& l,
                                   const ComplexMatrix& h);

/// Tr exp(L + H* log(A) H), with A m x m, H m x n and L n x n.
double trace_exp_functional(const PositiveDefiniteMatrix& a, const HermitianMatrix& l,
                            const ComplexMatrix& h);

/// Tr exp(L + sum_i H_i* log(A_i) H_i).
double multi_trace_exp(const MultiInstance& inst);

BlockLift block_lift(const MultiInstance& inst);

/// Tr exp(L_hat + H_hat* log(A_hat) H_hat); equals multi_trace_exp + (k - 1) n.
double block_lift_trace(const BlockLift& lift);

/// Tr exp(L + sum_i H_i* B_i H_i).
double gt_jensen_lhs(const ExponentInstance& inst);

/// Tr(exp(L) sum_i H_i* exp(B_i) H_i).
double gt_jensen_rhs(const ExponentInstance& inst);

/// Tr(exp(L) exp(sum_i H_i* B_i H_i)), the bound obtained by applying
/// Golden-Thompson first.
double golden_thompson_route(const ExponentInstance& inst);

/// Tr(X log B - X log X + X). Maximized over X at X = B with value Tr B.
double gibbs_objective(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& b);

/// -S_{H*}(X|A) + Tr(X L + A) with H the m x n contraction of
/// trace_exp_functional, X and L n x n. Maximized at X = exp(L + H* log(A) H)
/// with value trace_exp_functional(A, L, H).
double phi_objective(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& a,
                     const HermitianMatrix& l, const ComplexMatrix& h);

/// Throws NotAContraction unless ||H|| <= 1 + kContractionTolerance.
void require_contraction(const ComplexMatrix& h, const char* context);

}  // namespace entropylab
