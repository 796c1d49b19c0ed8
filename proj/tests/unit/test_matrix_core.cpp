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

#include <doctest.h>

#include <cmath>

#include "entropylab/matrix.hpp"
#include "entropylab/random.hpp"
#include "oracles.hpp"

using namespace entropylab;
using namespace entropylab::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an entropylab::Error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("HermitianMatrix validates and symmetrizes") {
  DenseMatrix m(2, 2);
  m << Complex(1, 0), Complex(2, 1), Complex(2, -1), Complex(3, 0);
  HermitianMatrix h(m);
  CHECK(h.dense() == h.dense().adjoint());
  CHECK(h.trace() == doctest::Approx(4.0));

  DenseMatrix skewed = m;
  skewed(0, 1) += 1e-6;
  CHECK(kind_of([&] { HermitianMatrix{skewed}; }) == ErrorKind::Domain);
  CHECK(kind_of([] { HermitianMatrix{DenseMatrix::Zero(2, 3)}; }) == ErrorKind::Dimension);

  // Round-off sized asymmetry is accepted and removed.
  DenseMatrix drift = m;
  drift(0, 1) += 1e-14;
  HermitianMatrix cleaned(drift);
  CHECK(cleaned.dense() == cleaned.dense().adjoint());
}

TEST_CASE("ComplexMatrix rejects empty and non-finite input") {
  CHECK(kind_of([] { ComplexMatrix{DenseMatrix(0, 2)}; }) == ErrorKind::Dimension);
  DenseMatrix bad = DenseMatrix::Identity(2, 2);
  bad(1, 0) = Complex(std::nan(""), 0.0);
  CHECK(kind_of([&] { ComplexMatrix{bad}; }) == ErrorKind::Domain);
}

TEST_CASE("PositiveDefiniteMatrix enforces the eigenvalue floor") {
  CHECK(pd(diag({1.0, 2.0})).min_eigenvalue() == doctest::Approx(1.0));
  CHECK(kind_of([] { pd(diag({1.0, 1e-11})); }) == ErrorKind::Domain);
  CHECK(kind_of([] { pd(diag({1.0, -2.0})); }) == ErrorKind::Domain);
  // A custom floor admits smaller spectra.
  PositiveDefiniteMatrix tiny(HermitianMatrix(diag({1.0, 1e-11})), 1e-12);
  CHECK(tiny.min_eigenvalue() == doctest::Approx(1e-11));
}

TEST_CASE("spectral_decompose on known spectra") {
  SUBCASE("diagonal") {
    const auto s = spectral_decompose(HermitianMatrix(diag({1.0, M_E})));
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(M_E));
    CHECK(max_abs_diff(s.eigenvectors.cwiseAbs().cast<Complex>(), DenseMatrix::Identity(2, 2)) < 1e-14);
  }
  SUBCASE("identity") {
    const auto s = spectral_decompose(HermitianMatrix::identity(3));
    for (Index i = 0; i < 3; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(1.0));
  }
  SUBCASE("2x2 symmetric") {
    DenseMatrix m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;
    const auto s = spectral_decompose(HermitianMatrix(m));
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("spectral reconstruction and unitarity over random instances") {
  Rng rng(RngSeed{11});
  for (int trial = 0; trial < 1000; ++trial) {
    const Index dim = 1 + trial % 8;
    const auto m = random_hermitian(dim, 1.0 + trial % 5, rng);
    const auto s = spectral_decompose(m);
    const double top = s.eigenvalues.cwiseAbs().maxCoeff();
    REQUIRE(max_abs_diff(s.reconstruct(), m.dense()) <= 1e-10 * (1.0 + top));
    REQUIRE(max_abs_diff(s.eigenvectors * s.eigenvectors.adjoint(), DenseMatrix::Identity(dim, dim)) <= 1e-10);
    for (Index i = 1; i < dim; ++i) REQUIRE(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
    // Spectral trace against the diagonal sum.
    const double diag_trace = m.trace();
    REQUIRE(std::abs(s.eigenvalues.sum() - diag_trace) <= 1e-10 * std::max(1.0, std::abs(diag_trace)) + 1e-12 * top);
  }
}

TEST_CASE("matrix_function basics") {
  const auto a = random_pd(4, {0.2, 3.0}, RngSeed{5});
  const auto same = matrix_function(a.hermitian(), [](double x) { return x; });
  CHECK(max_abs_diff(same.dense(), a.dense()) <= 1e-10);

  const auto lg = matrix_function(HermitianMatrix(diag({1.0, M_E})), [](double x) { return std::log(x); });
  CHECK(max_abs_diff(lg.dense(), diag({0.0, 1.0})) <= 1e-15);

  const auto round_trip = matrix_log(matrix_exp(a.hermitian()));
  CHECK(relative_frobenius(round_trip.dense(), a.dense()) <= 1e-9);

  CHECK(kind_of([] {
          matrix_function(HermitianMatrix(diag({-1.0, 2.0})), [](double x) { return std::log(x); });
        }) == ErrorKind::Domain);
  CHECK(kind_of([] {
          matrix_function(HermitianMatrix(diag({0.0, 2.0})), [](double x) { return std::log(x); });
        }) == ErrorKind::Domain);
}

TEST_CASE("matrix_power edge exponents") {
  const auto a = random_pd(3, {0.3, 4.0}, RngSeed{17});
  CHECK(max_abs_diff(matrix_power(a, 0.0).dense(), DenseMatrix::Identity(3, 3)) <= 1e-12);
  CHECK(max_abs_diff(matrix_power(a, 1.0).dense(), a.dense()) <= 1e-12);
  CHECK(max_abs_diff(matrix_power(pd(diag({4.0, 9.0})), 0.5).dense(), diag({2.0, 3.0})) <= 1e-14);
  CHECK(kind_of([&] { matrix_power(a, 1.5); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { matrix_power(a, -0.1); }) == ErrorKind::Domain);
}

TEST_CASE("spectral matrix functions agree with Pade and Schur-Parlett references") {
  Rng rng(RngSeed{23});
  for (int trial = 0; trial < 60; ++trial) {
    const Index dim = 1 + trial % 6;
    const auto m = random_hermitian(dim, 1.5, rng);
    CHECK(relative_frobenius(matrix_exp(m).dense(), oracle_expm(m.dense())) <= 1e-12);

    const auto a = random_pd(dim, {0.05, 5.0}, rng);
    CHECK(relative_frobenius(matrix_log(a).dense(), oracle_logm(a.dense())) <= 1e-10);
    const double p = rng.uniform(0.0, 1.0);
    CHECK(relative_frobenius(matrix_power(a, p).dense(), oracle_powm(a.dense(), p)) <= 1e-10);
    CHECK(trace_exp(m) == doctest::Approx(oracle_trace(oracle_expm(m.dense()))).epsilon(1e-12));
  }
}

TEST_CASE("exp(log(exp(M))) = exp(M)") {
  Rng rng(RngSeed{29});
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_hermitian(1 + trial % 8, 1.0, rng);
    const auto e = matrix_exp(m);
    const auto again = matrix_exp(matrix_log(e));
    REQUIRE(relative_frobenius(again.dense(), e.dense()) <= 1e-9);
  }
}

TEST_CASE("operator_norm") {
  CHECK(operator_norm(ComplexMatrix::identity(4)) == doctest::Approx(1.0));
  CHECK(operator_norm(ComplexMatrix::zero(2, 3)) == 0.0);
  DenseMatrix v(2, 1);
  v << 3.0, 4.0;
  CHECK(operator_norm(v) == doctest::Approx(5.0).epsilon(1e-15));

  Rng rng(RngSeed{31});
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix g = rng.gaussian(1 + trial % 4, 1 + trial % 5);
    const double ref = oracle_operator_norm(g);
    CHECK(std::abs(operator_norm(g) - ref) <= 1e-10 * ref);
  }
}

TEST_CASE("random generators honour their construction guarantees") {
  SUBCASE("isometric tuple") {
    const auto h = random_contraction_tuple(2, 2, 2, true, RngSeed{1});
    CHECK(max_abs_diff(h.gram(), DenseMatrix::Identity(2, 2)) <= 1e-12);
    CHECK(h.sum_is_identity());
  }
  SUBCASE("pd eigenvalue range") {
    const auto a = random_pd(3, {0.5, 2.0}, RngSeed{2});
    CHECK(a.spectrum().eigenvalues.minCoeff() >= 0.5);
    CHECK(a.spectrum().eigenvalues.maxCoeff() <= 2.0);
    const auto fresh = spectral_decompose(a.hermitian());
    CHECK(fresh.eigenvalues.minCoeff() >= 0.5 - 1e-12);
    CHECK(fresh.eigenvalues.maxCoeff() <= 2.0 + 1e-12);
  }
  SUBCASE("determinism") {
    CHECK(random_pd(4, {0.1, 3.0}, RngSeed{3}).dense() == random_pd(4, {0.1, 3.0}, RngSeed{3}).dense());
    CHECK(random_hermitian(4, 2.0, RngSeed{3}).dense() == random_hermitian(4, 2.0, RngSeed{3}).dense());
    const auto h1 = random_contraction_tuple(3, 2, 4, false, RngSeed{4});
    const auto h2 = random_contraction_tuple(3, 2, 4, false, RngSeed{4});
    for (std::size_t i = 0; i < 3; ++i) CHECK(h1[i].dense() == h2[i].dense());
    CHECK(random_pd(4, {0.1, 3.0}, RngSeed{3}).dense() != random_pd(4, {0.1, 3.0}, RngSeed{9}).dense());
  }
  SUBCASE("isometry needs k m >= n") {
    CHECK(kind_of([] { random_contraction_tuple(1, 2, 3, true, RngSeed{5}); }) == ErrorKind::Dimension);
    CHECK_NOTHROW(random_contraction_tuple(1, 2, 3, false, RngSeed{5}));
  }
  SUBCASE("every sampled tuple is a contraction") {
    Rng rng(RngSeed{6});
    for (int trial = 0; trial < 300; ++trial) {
      const Index k = 1 + trial % 4, m = 1 + (trial / 4) % 4, n = 1 + (trial / 16) % 4;
      const bool iso = trial % 2 == 0 && k * m >= n;
      const auto h = random_contraction_tuple(k, m, n, iso, rng);
      DenseMatrix stacked(k * m, n);
      for (Index i = 0; i < k; ++i) stacked.middleRows(i * m, m) = h[static_cast<std::size_t>(i)].dense();
      REQUIRE(oracle_operator_norm(stacked) <= 1.0 + 1e-10);
      if (iso) REQUIRE(max_abs_diff(h.gram(), DenseMatrix::Identity(n, n)) <= 1e-12);
    }
  }
}

TEST_CASE("ContractionTuple validation") {
  CHECK(kind_of([] { ContractionTuple::single(ComplexMatrix(1.5 * DenseMatrix::Identity(2, 2))); }) ==
        ErrorKind::NotAContraction);
  CHECK(kind_of([] {
          ContractionTuple({ComplexMatrix::identity(2), ComplexMatrix::zero(3, 2)}, false);
        }) == ErrorKind::Dimension);
  CHECK(kind_of([] { ContractionTuple::single(ComplexMatrix(0.5 * DenseMatrix::Identity(2, 2)), true); }) ==
        ErrorKind::Domain);
  const DenseMatrix half = DenseMatrix::Identity(2, 2) * std::sqrt(0.5);
  const ContractionTuple split({ComplexMatrix(half), ComplexMatrix(half)}, true);
  CHECK(split.k() == 2);
  CHECK(max_abs_diff(split.gram(), DenseMatrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("checked_real and trace_of_product") {
  CHECK(checked_real(Complex(2.0, 1e-12), "t") == 2.0);
  CHECK(kind_of([] { checked_real(Complex(2.0, 1e-6), "t"); }) == ErrorKind::NumericalInconsistency);
  const DenseMatrix a = DenseMatrix::Random(3, 2);
  const DenseMatrix b = DenseMatrix::Random(2, 3);
  CHECK(std::abs(trace_of_product(a, b) - (a * b).trace()) <= 1e-13);
  CHECK(kind_of([&] { trace_of_product(a, a); }) == ErrorKind::Dimension);
}

TEST_CASE("RngSeed::derive is a pure function of (seed, index)") {
  const RngSeed s{42};
  CHECK(s.derive(3) == s.derive(3));
  CHECK(!(s.derive(3) == s.derive(4)));
  CHECK(!(s.derive(3) == RngSeed{43}.derive(3)));
}
