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

#include "entropylab/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entropylab {
namespace {

void require_positive_dims(std::initializer_list<Index> dims) {
  for (Index d : dims) {
    if (d < 1) raise(ErrorKind::Dimension, "dimensions must be at least 1");
  }
}

}  // namespace

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::open_unit() {
  double u = 0.0;
  while (u == 0.0) u = std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  return u;
}

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

DenseMatrix Rng::gaussian(Index rows, Index cols) {
  DenseMatrix g(rows, cols);
  // Fill in row-major order so the stream layout does not depend on Eigen's
  // storage order.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) g(i, j) = complex_normal();
  }
  return g;
}

DenseMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  require_positive_dims({rows, cols});
  if (rows < cols) raise(ErrorKind::Dimension, "an isometry needs rows >= cols");
  const DenseMatrix g = rng.gaussian(rows, cols);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(rows, cols);
  const DenseMatrix& r = qr.matrixQR();
  for (Index j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DenseMatrix random_unitary(Index n, Rng& rng) { return random_isometry(n, n, rng); }

PositiveDefiniteMatrix random_pd(Index dim, EigenRange range, Rng& rng) {
  require_positive_dims({dim});
  if (!(range.lo > 0.0) || !(range.hi >= range.lo)) {
    raise(ErrorKind::Domain, "eigenvalue range must satisfy 0 < lo <= hi");
  }
  SpectralDecomposition s;
  s.eigenvalues.resize(dim);
  for (Index i = 0; i < dim; ++i) s.eigenvalues[i] = rng.uniform(range.lo, range.hi);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.eigenvectors = random_unitary(dim, rng);
  return PositiveDefiniteMatrix::from_spectrum(std::move(s));
}

PositiveDefiniteMatrix random_pd(Index dim, EigenRange range, RngSeed seed) {
  Rng rng(seed);
  return random_pd(dim, range, rng);
}

HermitianMatrix random_hermitian(Index dim, double scale, Rng& rng) {
  require_positive_dims({dim});
  const DenseMatrix g = rng.gaussian(dim, dim);
  return HermitianMatrix::symmetrize(scale * g);
}

HermitianMatrix random_hermitian(Index dim, double scale, RngSeed seed) {
  Rng rng(seed);
  return random_hermitian(dim, scale, rng);
}

ContractionTuple random_contraction_tuple(Index k, Index m, Index n, bool sum_is_identity,
                                          Rng& rng) {
  require_positive_dims({k, m, n});
  const Index tall = k * m;
  if (sum_is_identity && tall < n) {
    std::ostringstream os;
    os << "sum H_i* H_i = I_" << n << " needs k*m >= n, got k*m = " << tall;
    raise(ErrorKind::Dimension, os.str());
  }
  DenseMatrix stacked = tall >= n ? random_isometry(tall, n, rng)
                                  : DenseMatrix(random_isometry(n, tall, rng).adjoint());
  if (!sum_is_identity) stacked *= rng.open_unit();

  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) blocks.emplace_back(stacked.middleRows(i * m, m));
  return ContractionTuple(std::move(blocks), sum_is_identity);
}

ContractionTuple random_contraction_tuple(Index k, Index m, Index n, bool sum_is_identity,
                                          RngSeed seed) {
  Rng rng(seed);
  return random_contraction_tuple(k, m, n, sum_is_identity, rng);
}

}  // namespace entropylab
