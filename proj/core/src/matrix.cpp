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

#include "entropylab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entropylab {
namespace {

std::string shape(const DenseMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_nonempty_finite(const DenseMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    raise(ErrorKind::Dimension, std::string(what) + " must have at least one row and column");
  }
  if (!m.allFinite()) raise(ErrorKind::Domain, std::string(what) + " has non-finite entries");
}

void require_square(const DenseMatrix& m, const char* what) {
  require_nonempty_finite(m, what);
  if (m.rows() != m.cols()) {
    raise(ErrorKind::Dimension, std::string(what) + " must be square, got " + shape(m));
  }
}

DenseMatrix hermitian_part(const DenseMatrix& m) {
  DenseMatrix h = (m + m.adjoint()) * 0.5;
  return h;
}

}  // namespace

// ComplexMatrix

ComplexMatrix::ComplexMatrix(DenseMatrix m) : m_(std::move(m)) {
  require_nonempty_finite(m_, "matrix");
}

ComplexMatrix ComplexMatrix::identity(Index n) { return ComplexMatrix(DenseMatrix::Identity(n, n)); }

ComplexMatrix ComplexMatrix::zero(Index rows, Index cols) {
  return ComplexMatrix(DenseMatrix::Zero(rows, cols));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(m_.adjoint()); }

// HermitianMatrix

HermitianMatrix::HermitianMatrix(const DenseMatrix& m) {
  require_square(m, "Hermitian matrix");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance * (1.0 + scale)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (max |M - M*| = " << asym << ")";
    raise(ErrorKind::Domain, os.str());
  }
  m_ = hermitian_part(m);
}

HermitianMatrix::HermitianMatrix(Unchecked, DenseMatrix m) : m_(std::move(m)) {}

HermitianMatrix HermitianMatrix::symmetrize(const DenseMatrix& m) {
  require_square(m, "Hermitian matrix");
  return HermitianMatrix(Unchecked{}, hermitian_part(m));
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(Unchecked{}, DenseMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  return HermitianMatrix(Unchecked{}, DenseMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return symmetrize(d.cast<Complex>().asDiagonal().toDenseMatrix());
}

// SpectralDecomposition

DenseMatrix SpectralDecomposition::reconstruct() const { return with_eigenvalues(eigenvalues); }

DenseMatrix SpectralDecomposition::with_eigenvalues(const RealVector& values) const {
  if (values.size() != eigenvalues.size()) {
    raise(ErrorKind::Dimension, "replacement spectrum has the wrong length");
  }
  return eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m.dense(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    raise(ErrorKind::Convergence, "Hermitian eigensolver did not converge on a " +
                                      shape(m.dense()) + " matrix");
  }
  // Eigen returns eigenvalues in increasing order.
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

// PositiveDefiniteMatrix

PositiveDefiniteMatrix::PositiveDefiniteMatrix(HermitianMatrix m, double pd_floor)
    : base_(std::move(m)),
      spectrum_(std::make_shared<const SpectralDecomposition>(spectral_decompose(base_))),
      min_eigenvalue_(spectrum_->eigenvalues.minCoeff()) {
  if (!(min_eigenvalue_ > pd_floor)) {
    std::ostringstream os;
    os << "matrix is not positive definite (min eigenvalue " << min_eigenvalue_ << " <= floor "
       << pd_floor << ")";
    raise(ErrorKind::Domain, os.str());
  }
}

PositiveDefiniteMatrix::PositiveDefiniteMatrix(HermitianMatrix m,
                                               std::shared_ptr<const SpectralDecomposition> s,
                                               double pd_floor)
    : base_(std::move(m)), spectrum_(std::move(s)), min_eigenvalue_(spectrum_->eigenvalues.minCoeff()) {
  if (!(min_eigenvalue_ > pd_floor)) {
    std::ostringstream os;
    os << "spectrum is not positive definite (min eigenvalue " << min_eigenvalue_
       << " <= floor " << pd_floor << ")";
    raise(ErrorKind::Domain, os.str());
  }
}

PositiveDefiniteMatrix PositiveDefiniteMatrix::from_spectrum(SpectralDecomposition spectrum,
                                                             double pd_floor) {
  if (!spectrum.eigenvalues.allFinite()) raise(ErrorKind::Domain, "non-finite spectrum");
  auto dense = spectrum.reconstruct();
  return PositiveDefiniteMatrix(HermitianMatrix::symmetrize(dense),
                                std::make_shared<const SpectralDecomposition>(std::move(spectrum)),
                                pd_floor);
}

PositiveDefiniteMatrix PositiveDefiniteMatrix::assemble(HermitianMatrix m,
                                                        SpectralDecomposition spectrum,
                                                        double pd_floor) {
  if (spectrum.dim() != m.dim()) raise(ErrorKind::Dimension, "spectrum does not match matrix size");
  return PositiveDefiniteMatrix(std::move(m),
                                std::make_shared<const SpectralDecomposition>(std::move(spectrum)),
                                pd_floor);
}

// ContractionTuple

ContractionTuple::ContractionTuple(std::vector<ComplexMatrix> blocks, bool sum_is_identity)
    : blocks_(std::move(blocks)), sum_is_identity_(sum_is_identity) {
  if (blocks_.empty()) raise(ErrorKind::Dimension, "contraction tuple needs at least one block");
  for (const auto& b : blocks_) {
    if (b.rows() != m() || b.cols() != n()) {
      raise(ErrorKind::Dimension, "contraction blocks must share one shape, got " +
                                      shape(blocks_.front().dense()) + " and " + shape(b.dense()));
    }
  }
  const DenseMatrix g = gram();
  const double top = Eigen::SelfAdjointEigenSolver<DenseMatrix>(g, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .maxCoeff();
  if (top > 1.0 + kContractionTolerance) {
    std::ostringstream os;
    os << "largest eigenvalue of sum H_i* H_i is " << top;
    raise(ErrorKind::NotAContraction, os.str());
  }
  if (sum_is_identity_) {
    const double dev = max_abs_diff(g, DenseMatrix::Identity(n(), n()));
    if (dev > kContractionTolerance) {
      std::ostringstream os;
      os << "sum H_i* H_i deviates from the identity by " << dev;
      raise(ErrorKind::Domain, os.str());
    }
  }
}

ContractionTuple ContractionTuple::single(ComplexMatrix h, bool is_isometry) {
  std::vector<ComplexMatrix> blocks;
  blocks.push_back(std::move(h));
  return ContractionTuple(std::move(blocks), is_isometry);
}

DenseMatrix ContractionTuple::gram() const {
  DenseMatrix g = DenseMatrix::Zero(n(), n());
  for (const auto& b : blocks_) g.noalias() += b.dense().adjoint() * b.dense();
  return g;
}

RngSeed RngSeed::derive(std::uint64_t index) const noexcept {
  // splitmix64 finalizer over a Weyl step.
  std::uint64_t z = value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return RngSeed{z ^ (z >> 31)};
}

// Matrix functions

HermitianMatrix matrix_function(const SpectralDecomposition& s, const ScalarFunction& f) {
  RealVector values(s.dim());
  for (Index i = 0; i < s.dim(); ++i) {
    values[i] = f(s.eigenvalues[i]);
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << "function is not finite at eigenvalue " << s.eigenvalues[i];
      raise(ErrorKind::Domain, os.str());
    }
  }
  return HermitianMatrix::symmetrize(s.with_eigenvalues(values));
}

HermitianMatrix matrix_function(const HermitianMatrix& m, const ScalarFunction& f) {
  return matrix_function(spectral_decompose(m), f);
}

HermitianMatrix matrix_log(const PositiveDefiniteMatrix& a) {
  return matrix_function(a.spectrum(), [](double x) { return std::log(x); });
}

PositiveDefiniteMatrix matrix_exp(const HermitianMatrix& m) {
  auto s = spectral_decompose(m);
  s.eigenvalues = s.eigenvalues.array().exp().matrix();
  return PositiveDefiniteMatrix::from_spectrum(std::move(s), 0.0);
}

PositiveDefiniteMatrix matrix_power(const PositiveDefiniteMatrix& a, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "matrix_power exponent must lie in [0, 1], got " << p;
    raise(ErrorKind::Domain, os.str());
  }
  SpectralDecomposition s = a.spectrum();
  for (Index i = 0; i < s.dim(); ++i) s.eigenvalues[i] = std::pow(s.eigenvalues[i], p);
  return PositiveDefiniteMatrix::from_spectrum(std::move(s), 0.0);
}

double trace_exp(const HermitianMatrix& m) {
  const RealVector ev =
      Eigen::SelfAdjointEigenSolver<DenseMatrix>(m.dense(), Eigen::EigenvaluesOnly).eigenvalues();
  const double t = ev.array().exp().sum();
  if (!std::isfinite(t)) raise(ErrorKind::Domain, "trace of exponential overflowed");
  return t;
}

// Norms and traces

double operator_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const ComplexMatrix& m) { return operator_norm(m.dense()); }

bool is_contraction(const DenseMatrix& m, double tolerance) {
  return operator_norm(m) <= 1.0 + tolerance;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    raise(ErrorKind::Dimension, "shape mismatch " + shape(a) + " vs " + shape(b));
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    raise(ErrorKind::Dimension, "trace of product needs " + shape(a) + " times its transpose shape, got " + shape(b));
  }
  return a.cwiseProduct(b.transpose()).sum();
}

double checked_real(Complex value, const std::string& context) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    raise(ErrorKind::NumericalInconsistency, context + ": trace is not finite");
  }
  if (std::abs(value.imag()) > kImaginaryTraceTolerance * (1.0 + std::abs(value.real()))) {
    std::ostringstream os;
    os << context << ": imaginary part " << value.imag() << " of a real trace exceeds tolerance";
    raise(ErrorKind::NumericalInconsistency, os.str());
  }
  return value.real();
}

PositiveDefiniteMatrix mix(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                           double w) {
  if (a.dim() != b.dim()) raise(ErrorKind::Dimension, "cannot mix matrices of different size");
  return PositiveDefiniteMatrix(HermitianMatrix::symmetrize(w * a.dense() + (1.0 - w) * b.dense()));
}

}  // namespace entropylab
