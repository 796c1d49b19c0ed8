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

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entropylab/errors.hpp"

namespace entropylab {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative asymmetry accepted when validating a Hermitian input.
inline constexpr double kHermitianTolerance = 1e-12;
/// Default lower bound on the spectrum of a PositiveDefiniteMatrix.
inline constexpr double kDefaultPdFloor = 1e-10;
/// Slack on operator norm <= 1 when testing for a contraction.
inline constexpr double kContractionTolerance = 1e-10;
/// Largest |Im Tr(.)| / (1 + |Re Tr(.)|) tolerated before a trace that must be
/// real is reported as inconsistent.
inline constexpr double kImaginaryTraceTolerance = 1e-10;

/// Dense complex matrix with at least one row and column and finite entries.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(DenseMatrix m);

  static ComplexMatrix identity(Index n);
  static ComplexMatrix zero(Index rows, Index cols);

  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  const DenseMatrix& dense() const noexcept { return m_; }
  ComplexMatrix adjoint() const;

 private:
  DenseMatrix m_;
};

/// Square matrix stored exactly conjugate-symmetric, M = (M + M*) / 2.
class HermitianMatrix {
 public:
  /// Validates conjugate symmetry within kHermitianTolerance before
  /// symmetrizing. Throws Domain for asymmetric input, Dimension for a
  /// non-square or empty one.
  explicit HermitianMatrix(const DenseMatrix& m);

  /// Symmetrizes without the asymmetry check. Used for values that are
  /// Hermitian by construction and only carry round-off asymmetry.
  static HermitianMatrix symmetrize(const DenseMatrix& m);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);
  static HermitianMatrix diagonal(const RealVector& d);

  Index dim() const noexcept { return m_.rows(); }
  const DenseMatrix& dense() const noexcept { return m_; }
  ComplexMatrix as_complex() const { return ComplexMatrix(m_); }
  double trace() const noexcept { return m_.diagonal().real().sum(); }

 private:
  struct Unchecked {};
  HermitianMatrix(Unchecked, DenseMatrix m);

  DenseMatrix m_;
};

/// M = U diag(eigenvalues) U*, eigenvalues ascending, U unitary.
struct SpectralDecomposition {
  RealVector eigenvalues;
  DenseMatrix eigenvectors;

  Index dim() const noexcept { return eigenvalues.size(); }
  DenseMatrix reconstruct() const;
  /// U diag(values) U* for an arbitrary replacement spectrum.
  DenseMatrix with_eigenvalues(const RealVector& values) const;
};

/// Hermitian matrix whose smallest eigenvalue exceeds a construction floor.
/// The spectral decomposition is computed once and shared between copies.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(HermitianMatrix m, double pd_floor = kDefaultPdFloor);

  /// Builds the matrix from a known decomposition; the decomposition is kept
  /// as the cached spectrum.
  static PositiveDefiniteMatrix from_spectrum(SpectralDecomposition spectrum,
                                              double pd_floor = kDefaultPdFloor);

  /// Pairs a matrix with a decomposition the caller already holds for it,
  /// e.g. the block-wise spectra of a block-diagonal matrix. Consistency of
  /// the two is not re-checked.
  static PositiveDefiniteMatrix assemble(HermitianMatrix m, SpectralDecomposition spectrum,
                                         double pd_floor = kDefaultPdFloor);

  Index dim() const noexcept { return base_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const DenseMatrix& dense() const noexcept { return base_.dense(); }
  const SpectralDecomposition& spectrum() const noexcept { return *spectrum_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  double trace() const noexcept { return base_.trace(); }

 private:
  PositiveDefiniteMatrix(HermitianMatrix m, std::shared_ptr<const SpectralDecomposition> s,
                         double pd_floor);

  HermitianMatrix base_;
  std::shared_ptr<const SpectralDecomposition> spectrum_;
  double min_eigenvalue_;
};

/// H_1..H_k, each m x n, with sum H_i* H_i <= I_n.
class ContractionTuple {
 public:
  ContractionTuple(std::vector<ComplexMatrix> blocks, bool sum_is_identity);

  /// k = 1 tuple holding a single contraction.
  static ContractionTuple single(ComplexMatrix h, bool is_isometry = false);

  Index k() const noexcept { return static_cast<Index>(blocks_.size()); }
  Index m() const noexcept { return blocks_.front().rows(); }
  Index n() const noexcept { return blocks_.front().cols(); }
  bool sum_is_identity() const noexcept { return sum_is_identity_; }
  const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
  const ComplexMatrix& operator[](std::size_t i) const { return blocks_.at(i); }

  /// sum_i H_i* H_i, an n x n matrix.
  DenseMatrix gram() const;

 private:
  std::vector<ComplexMatrix> blocks_;
  bool sum_is_identity_;
};

struct RngSeed {
  std::uint64_t value = 0;

  /// Seed for the i-th independent stream; a pure function of (value, i).
  RngSeed derive(std::uint64_t index) const noexcept;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

using ScalarFunction = std::function<double(double)>;

/// Hermitian eigendecomposition. Throws Convergence if the solver fails.
SpectralDecomposition spectral_decompose(const HermitianMatrix& m);

/// U diag(f(lambda_i)) U*. Throws Domain if f is non-finite anywhere on the
/// spectrum.
HermitianMatrix matrix_function(const HermitianMatrix& m, const ScalarFunction& f);
HermitianMatrix matrix_function(const SpectralDecomposition& s, const ScalarFunction& f);

HermitianMatrix matrix_log(const PositiveDefiniteMatrix& a);
PositiveDefiniteMatrix matrix_exp(const HermitianMatrix& m);
/// A^p for p in [0, 1].
PositiveDefiniteMatrix matrix_power(const PositiveDefiniteMatrix& a, double p);

/// Tr exp(M) summed over the spectrum.
double trace_exp(const HermitianMatrix& m);

/// Largest singular value.
double operator_norm(const DenseMatrix& m);
double operator_norm(const ComplexMatrix& m);

bool is_contraction(const DenseMatrix& m, double tolerance = kContractionTolerance);

/// max_ij |a_ij - b_ij|; Dimension error on shape mismatch.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Tr(a b) without forming the product.
Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b);

/// Real part of a trace that must be real. Throws NumericalInconsistency
/// when the imaginary part exceeds kImaginaryTraceTolerance * (1 + |re|).
double checked_real(Complex value, const std::string& context);

/// Convex combination w*a + (1 - w)*b of two positive definite matrices.
PositiveDefiniteMatrix mix(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                           double w);

}  // namespace entropylab
