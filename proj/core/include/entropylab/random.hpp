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

#include <random>

#include "entropylab/matrix.hpp"

namespace entropylab {

/// Closed eigenvalue interval [lo, hi] for sampled positive definite matrices.
struct EigenRange {
  double lo = 0.05;
  double hi = 5.0;
};

/// Deterministic random source. Identical seeds produce bit-identical streams
/// on one platform.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  double uniform(double lo, double hi);
  /// Uniform on the open interval (0, 1).
  double open_unit();
  double normal();
  /// Real and imaginary parts independent standard normals.
  Complex complex_normal();
  DenseMatrix gaussian(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed unitary from QR of a complex Gaussian with the diagonal
/// of R made real positive.
DenseMatrix random_unitary(Index n, Rng& rng);

/// rows x cols matrix with orthonormal columns (rows >= cols).
DenseMatrix random_isometry(Index rows, Index cols, Rng& rng);

PositiveDefiniteMatrix random_pd(Index dim, EigenRange range, Rng& rng);
PositiveDefiniteMatrix random_pd(Index dim, EigenRange range, RngSeed seed);

/// (G + G*) / 2 scaled by `scale`, G with complex standard normal entries.
HermitianMatrix random_hermitian(Index dim, double scale, Rng& rng);
HermitianMatrix random_hermitian(Index dim, double scale, RngSeed seed);

/// With sum_is_identity, a (k m) x n isometry split into k row blocks of
/// height m, so sum H_i* H_i = I_n. Otherwise the same construction is scaled
/// by a uniform factor in (0, 1); when k m < n the adjoint of an isometry is
/// used instead. Throws Dimension if sum_is_identity and k m < n.
ContractionTuple random_contraction_tuple(Index k, Index m, Index n, bool sum_is_identity,
                                          Rng& rng);
ContractionTuple random_contraction_tuple(Index k, Index m, Index n, bool sum_is_identity,
                                          RngSeed seed);

}  // namespace entropylab
