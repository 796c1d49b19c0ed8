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

// Reference computations for tests. Nothing here calls the spectral
// matrix-function path under test: exponentials and logarithms go through
// Eigen's Pade / Schur-Parlett implementations instead.

#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "entropylab/matrix.hpp"

namespace entropylab::testing {

inline DenseMatrix oracle_expm(const DenseMatrix& m) { return m.exp(); }
inline DenseMatrix oracle_logm(const DenseMatrix& m) { return m.log(); }
inline DenseMatrix oracle_powm(const DenseMatrix& m, double p) { return m.pow(p); }

inline double oracle_trace(const DenseMatrix& m) { return m.trace().real(); }

/// Largest singular value from the top eigenvalue of M* M.
inline double oracle_operator_norm(const DenseMatrix& m) {
  const DenseMatrix g = m.adjoint() * m;
  Eigen::ComplexEigenSolver<DenseMatrix> solver(g);
  double top = 0.0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    top = std::max(top, solver.eigenvalues()[i].real());
  }
  return std::sqrt(top);
}

inline double relative_frobenius(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).norm() / std::max(1e-300, b.norm());
}

/// (f(h) - f(-h)) / 2h.
inline double central_difference(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

/// Re Tr(G V), the Euclidean pairing of Hermitian matrices.
inline double pairing(const DenseMatrix& g, const DenseMatrix& v) {
  return (g.adjoint() * v).trace().real();
}

inline DenseMatrix scalar(double x) {
  DenseMatrix m(1, 1);
  m(0, 0) = x;
  return m;
}

inline DenseMatrix diag(std::initializer_list<double> values) {
  DenseMatrix m = DenseMatrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline PositiveDefiniteMatrix pd(const DenseMatrix& m) {
  return PositiveDefiniteMatrix(HermitianMatrix(m));
}

}  // namespace entropylab::testing
