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

#include "entropylab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entropylab {
namespace {

void require_same_dim(Index a, Index b, const char* context) {
  if (a != b) {
    std::ostringstream os;
    os << context << ": dimension " << a << " does not match " << b;
    raise(ErrorKind::Dimension, os.str());
  }
}

/// H (p x q) must map the space of B (q) into the space of A (p).
void require_bridge_shape(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                          const ComplexMatrix& h, const char* context) {
  if (h.rows() != a.dim() || h.cols() != b.dim()) {
    std::ostringstream os;
    os << context << ": H is " << h.rows() << "x" << h.cols() << " but A is " << a.dim()
       << "x" << a.dim() << " and B is " << b.dim() << "x" << b.dim();
    raise(ErrorKind::Dimension, os.str());
  }
}

double trace_x_log_x(const PositiveDefiniteMatrix& x) {
  const RealVector& ev = x.spectrum().eigenvalues;
  return (ev.array() * ev.array().log()).sum();
}

/// Tr(A log A - K log B - A + B) where K is the matrix paired with log B.
double entropy_with_cross_term(const PositiveDefiniteMatrix& a, const DenseMatrix& cross,
                               const PositiveDefiniteMatrix& b, const char* context) {
  const HermitianMatrix log_b = matrix_log(b);
  const double cross_trace = checked_real(trace_of_product(cross, log_b.dense()), context);
  return trace_x_log_x(a) - cross_trace - a.trace() + b.trace();
}

PositiveDefiniteMatrix block_diagonal(const std::vector<PositiveDefiniteMatrix>& blocks) {
  Index total = 0;
  for (const auto& b : blocks) total += b.dim();
  SpectralDecomposition s;
  s.eigenvalues.resize(total);
  s.eigenvectors = DenseMatrix::Zero(total, total);
  Index offset = 0;
  for (const auto& b : blocks) {
    const Index d = b.dim();
    s.eigenvalues.segment(offset, d) = b.spectrum().eigenvalues;
    s.eigenvectors.block(offset, offset, d, d) = b.spectrum().eigenvectors;
    offset += d;
  }
  // Keep the ascending-order convention of SpectralDecomposition.
  std::vector<Index> order(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return s.eigenvalues[x] < s.eigenvalues[y]; });
  SpectralDecomposition sorted;
  sorted.eigenvalues.resize(total);
  sorted.eigenvectors.resize(total, total);
  for (Index i = 0; i < total; ++i) {
    sorted.eigenvalues[i] = s.eigenvalues[order[static_cast<std::size_t>(i)]];
    sorted.eigenvectors.col(i) = s.eigenvectors.col(order[static_cast<std::size_t>(i)]);
  }
  DenseMatrix exact = DenseMatrix::Zero(total, total);
  offset = 0;
  for (const auto& b : blocks) {
    exact.block(offset, offset, b.dim(), b.dim()) = b.dense();
    offset += b.dim();
  }
  return PositiveDefiniteMatrix::assemble(HermitianMatrix::symmetrize(exact), std::move(sorted), 0.0);
}

}  // namespace

void require_contraction(const ComplexMatrix& h, const char* context) {
  const double norm = operator_norm(h);
  if (norm > 1.0 + kContractionTolerance) {
    std::ostringstream os;
    os << context << ": operator norm of H is " << norm;
    raise(ErrorKind::NotAContraction, os.str());
  }
}

void validate(const MultiInstance& inst) {
  require_same_dim(inst.L.dim(), inst.H.n(), "L versus contraction column count n");
  require_same_dim(static_cast<Index>(inst.A.size()), inst.H.k(), "number of A_i versus k");
  for (const auto& a : inst.A) require_same_dim(a.dim(), inst.H.m(), "A_i versus contraction row count m");
}

void validate(const ExponentInstance& inst) {
  require_same_dim(inst.L.dim(), inst.H.n(), "L versus contraction column count n");
  require_same_dim(static_cast<Index>(inst.B.size()), inst.H.k(), "number of B_i versus k");
  for (const auto& b : inst.B) require_same_dim(b.dim(), inst.H.m(), "B_i versus contraction row count m");
}

double relative_entropy(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "relative_entropy");
  return entropy_with_cross_term(a, a.dense(), b, "relative_entropy");
}

double reduced_relative_entropy(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                const ComplexMatrix& h) {
  require_bridge_shape(a, b, h, "reduced_relative_entropy");
  require_contraction(h, "reduced_relative_entropy");
  const DenseMatrix& hm = h.dense();
  const DenseMatrix cross = hm.adjoint() * a.dense() * hm;
  return entropy_with_cross_term(a, cross, b, "reduced_relative_entropy");
}

double lieb_trace(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                  const ComplexMatrix& h, double p) {
  require_bridge_shape(a, b, h, "lieb_trace");
  if (!(p >= 0.0 && p <= 1.0)) raise(ErrorKind::Domain, "lieb_trace needs p in [0, 1]");
  const PositiveDefiniteMatrix b_p = matrix_power(b, p);
  const PositiveDefiniteMatrix a_q = matrix_power(a, 1.0 - p);
  const DenseMatrix& hm = h.dense();
  const DenseMatrix left = hm * b_p.dense() * hm.adjoint();
  return checked_real(trace_of_product(left, a_q.dense()), "lieb_trace");
}

double lieb_trace_derivative_at_zero(const PositiveDefiniteMatrix& a,
                                     const PositiveDefiniteMatrix& b, const ComplexMatrix& h) {
  require_bridge_shape(a, b, h, "lieb_trace_derivative_at_zero");
  const DenseMatrix& hm = h.dense();
  const HermitianMatrix log_b = matrix_log(b);
  const HermitianMatrix a_log_a =
      matrix_function(a.spectrum(), [](double x) { return x * std::log(x); });
  const Complex first = trace_of_product(hm * log_b.dense() * hm.adjoint(), a.dense());
  const Complex second = trace_of_product(hm * hm.adjoint(), a_log_a.dense());
  return checked_real(first - second, "lieb_trace_derivative_at_zero");
}

HermitianMatrix trace_exp_exponent(const PositiveDefiniteMatrix& a, const HermitianMatrix& l,
                                   const ComplexMatrix& h) {
  if (h.rows() != a.dim() || h.cols() != l.dim()) {
    std::ostringstream os;
    os << "trace_exp_functional: H is " << h.rows() << "x" << h.cols() << " but A is "
       << a.dim() << "x" << a.dim() << " and L is " << l.dim() << "x" << l.dim();
    raise(ErrorKind::Dimension, os.str());
  }
  require_contraction(h, "trace_exp_functional");
  const DenseMatrix& hm = h.dense();
  return HermitianMatrix::symmetrize(l.dense() + hm.adjoint() * matrix_log(a).dense() * hm);
}

double trace_exp_functional(const PositiveDefiniteMatrix& a, const HermitianMatrix& l,
                            const ComplexMatrix& h) {
  return trace_exp(trace_exp_exponent(a, l, h));
}

double multi_trace_exp(const MultiInstance& inst) {
  validate(inst);
  DenseMatrix exponent = inst.L.dense();
  for (std::size_t i = 0; i < inst.A.size(); ++i) {
    const DenseMatrix& hm = inst.H[i].dense();
    exponent.noalias() += hm.adjoint() * matrix_log(inst.A[i]).dense() * hm;
  }
  return trace_exp(HermitianMatrix::symmetrize(exponent));
}

BlockLift block_lift(const MultiInstance& inst) {
  validate(inst);
  const Index k = inst.H.k();
  const Index m = inst.H.m();
  const Index n = inst.H.n();

  DenseMatrix l_hat = DenseMatrix::Zero(k * n, k * n);
  l_hat.topLeftCorner(n, n) = inst.L.dense();

  DenseMatrix h_hat = DenseMatrix::Zero(k * m, k * n);
  for (Index i = 0; i < k; ++i) {
    h_hat.block(i * m, 0, m, n) = inst.H[static_cast<std::size_t>(i)].dense();
  }
  return BlockLift{block_diagonal(inst.A), HermitianMatrix::symmetrize(l_hat),
                   ComplexMatrix(std::move(h_hat))};
}

double block_lift_trace(const BlockLift& lift) {
  return trace_exp_functional(lift.A_hat, lift.L_hat, lift.H_hat);
}

namespace {

DenseMatrix mixed_exponent(const ExponentInstance& inst) {
  DenseMatrix s = DenseMatrix::Zero(inst.H.n(), inst.H.n());
  for (std::size_t i = 0; i < inst.B.size(); ++i) {
    const DenseMatrix& hm = inst.H[i].dense();
    s.noalias() += hm.adjoint() * inst.B[i].dense() * hm;
  }
  return s;
}

}  // namespace

double gt_jensen_lhs(const ExponentInstance& inst) {
  validate(inst);
  return trace_exp(HermitianMatrix::symmetrize(inst.L.dense() + mixed_exponent(inst)));
}

double gt_jensen_rhs(const ExponentInstance& inst) {
  validate(inst);
  DenseMatrix averaged = DenseMatrix::Zero(inst.H.n(), inst.H.n());
  for (std::size_t i = 0; i < inst.B.size(); ++i) {
    const DenseMatrix& hm = inst.H[i].dense();
    averaged.noalias() += hm.adjoint() * matrix_exp(inst.B[i]).dense() * hm;
  }
  return checked_real(trace_of_product(matrix_exp(inst.L).dense(), averaged), "gt_jensen_rhs");
}

double golden_thompson_route(const ExponentInstance& inst) {
  validate(inst);
  const auto exp_s = matrix_exp(HermitianMatrix::symmetrize(mixed_exponent(inst)));
  return checked_real(trace_of_product(matrix_exp(inst.L).dense(), exp_s.dense()),
                      "golden_thompson_route");
}

double gibbs_objective(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& b) {
  require_same_dim(x.dim(), b.dim(), "gibbs_objective");
  const double x_log_b = checked_real(trace_of_product(x.dense(), matrix_log(b).dense()),
                                      "gibbs_objective");
  return x_log_b - trace_x_log_x(x) + x.trace();
}

double phi_objective(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& a,
                     const HermitianMatrix& l, const ComplexMatrix& h) {
  if (h.rows() != a.dim() || h.cols() != x.dim() || l.dim() != x.dim()) {
    std::ostringstream os;
    os << "phi_objective: need H m x n, A m x m, X and L n x n; got H " << h.rows() << "x"
       << h.cols() << ", A " << a.dim() << ", X " << x.dim() << ", L " << l.dim();
    raise(ErrorKind::Dimension, os.str());
  }
  const double s = reduced_relative_entropy(x, a, h.adjoint());
  const double x_l = checked_real(trace_of_product(x.dense(), l.dense()), "phi_objective");
  return -s + x_l + a.trace();
}

}  // namespace entropylab
