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

#include "entropylab/functionals.hpp"
#include "entropylab/random.hpp"
#include "oracles.hpp"

using namespace entropylab;
using namespace entropylab::testing;

namespace {

// Independent evaluations built on Pade logm / expm / powm.
double ref_reduced_entropy(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& h) {
  const DenseMatrix cross = h.adjoint() * a * h;
  return oracle_trace(a * oracle_logm(a)) - oracle_trace(cross * oracle_logm(b)) - oracle_trace(a) +
         oracle_trace(b);
}

double ref_lieb(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& h, double p) {
  return oracle_trace(h * oracle_powm(b, p) * h.adjoint() * oracle_powm(a, 1.0 - p));
}

double ref_phi(const DenseMatrix& a, const DenseMatrix& l, const DenseMatrix& h) {
  return oracle_trace(oracle_expm(l + h.adjoint() * oracle_logm(a) * h));
}

ComplexMatrix cm(const DenseMatrix& m) { return ComplexMatrix(m); }

MultiInstance scalar_pair() {
  const DenseMatrix half = scalar(1.0 / std::sqrt(2.0));
  return MultiInstance{HermitianMatrix(scalar(0.0)), ContractionTuple({cm(half), cm(half)}, true),
                       {pd(scalar(4.0)), pd(scalar(9.0))}};
}

}  // namespace

TEST_CASE("relative_entropy") {
  CHECK(relative_entropy(pd(scalar(2.0)), pd(scalar(1.0))) ==
        doctest::Approx(0.386294361119890619).epsilon(1e-14));

  const auto a = random_pd(4, {0.05, 5.0}, RngSeed{1});
  CHECK(std::abs(relative_entropy(a, a)) <= 1e-10);

  Rng rng(RngSeed{2});
  for (int trial = 0; trial < 1000; ++trial) {
    const Index dim = 1 + trial % 6;
    const auto x = random_pd(dim, {0.05, 5.0}, rng);
    const auto y = random_pd(dim, {0.05, 5.0}, rng);
    REQUIRE(relative_entropy(x, y) >= -1e-10);
  }
}

TEST_CASE("reduced_relative_entropy") {
  SUBCASE("identity contraction recovers the relative entropy") {
    Rng rng(RngSeed{3});
    for (int trial = 0; trial < 100; ++trial) {
      const Index dim = 1 + trial % 5;
      const auto a = random_pd(dim, {0.05, 5.0}, rng);
      const auto b = random_pd(dim, {0.05, 5.0}, rng);
      REQUIRE(std::abs(reduced_relative_entropy(a, b, ComplexMatrix::identity(dim)) - relative_entropy(a, b)) <=
              1e-12 * (1.0 + std::abs(relative_entropy(a, b))));
    }
  }
  SUBCASE("zero contraction drops the cross term") {
    const auto a = random_pd(3, {0.1, 2.0}, RngSeed{4});
    const auto b = random_pd(3, {0.1, 2.0}, RngSeed{5});
    const double expected = oracle_trace(a.dense() * oracle_logm(a.dense())) - a.trace() + b.trace();
    CHECK(reduced_relative_entropy(a, b, ComplexMatrix::zero(3, 3)) == doctest::Approx(expected).epsilon(1e-11));
  }
  SUBCASE("scalar") {
    CHECK(reduced_relative_entropy(pd(scalar(M_E)), pd(scalar(M_E)), cm(scalar(0.5))) ==
          doctest::Approx(2.038711371344283927).epsilon(1e-14));
    CHECK(reduced_relative_entropy(pd(scalar(2.0)), pd(scalar(3.0)), cm(scalar(0.6))) ==
          doctest::Approx(1.595293513278851641).epsilon(1e-14));
  }
  SUBCASE("agrees with the Pade reference, square and rectangular") {
    Rng rng(RngSeed{6});
    for (int trial = 0; trial < 100; ++trial) {
      const Index p = 1 + trial % 4, q = 1 + (trial / 4) % 4;
      const auto a = random_pd(p, {0.05, 5.0}, rng);
      const auto b = random_pd(q, {0.05, 5.0}, rng);
      const auto h = random_contraction_tuple(1, p, q, false, rng)[0];
      const double ref = ref_reduced_entropy(a.dense(), b.dense(), h.dense());
      REQUIRE(std::abs(reduced_relative_entropy(a, b, h) - ref) <= 1e-9 * (1.0 + std::abs(ref)));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(reduced_relative_entropy(pd(scalar(1.0)), pd(scalar(1.0)), cm(scalar(1.5))), Error);
    try {
      reduced_relative_entropy(pd(scalar(1.0)), pd(scalar(1.0)), cm(scalar(1.5)));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAContraction);
    }
    try {
      reduced_relative_entropy(pd(diag({1.0, 2.0})), pd(scalar(1.0)), cm(scalar(0.5)));
      FAIL("expected Dimension");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Dimension);
    }
  }
}

TEST_CASE("lieb_trace and its derivative at zero") {
  const auto a = random_pd(3, {0.05, 5.0}, RngSeed{7});
  const auto b = random_pd(3, {0.05, 5.0}, RngSeed{8});
  const auto id = ComplexMatrix::identity(3);
  CHECK(lieb_trace(a, b, id, 0.0) == doctest::Approx(a.trace()).epsilon(1e-12));
  CHECK(lieb_trace(b, b, id, 1.0) == doctest::Approx(b.trace()).epsilon(1e-12));
  CHECK(lieb_trace(pd(scalar(2.0)), pd(scalar(3.0)), cm(scalar(1.0)), 0.3) ==
        doctest::Approx(2.258693870913710903).epsilon(1e-14));
  CHECK(std::abs(lieb_trace_derivative_at_zero(a, a, id)) <= 1e-10);
  CHECK(lieb_trace_derivative_at_zero(pd(scalar(2.0)), pd(scalar(3.0)), cm(scalar(1.0))) ==
        doctest::Approx(0.810930216216328764).epsilon(1e-14));
  CHECK_THROWS_AS(lieb_trace(a, b, id, 1.2), Error);

  Rng rng(RngSeed{9});
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    // H maps the space of B (n) into the space of A (m).
    const auto x = random_pd(m, {0.05, 5.0}, rng);
    const auto y = random_pd(n, {0.05, 5.0}, rng);
    const auto h = random_contraction_tuple(1, m, n, false, rng)[0];
    const double p = rng.uniform(0.0, 1.0);
    const double ref = ref_lieb(x.dense(), y.dense(), h.dense(), p);
    REQUIRE(std::abs(lieb_trace(x, y, h, p) - ref) <= 1e-10 * (1.0 + std::abs(ref)));

    const double base = lieb_trace(x, y, h, 0.0);
    const double deriv = lieb_trace_derivative_at_zero(x, y, h);
    const auto err = [&](double step) { return std::abs((lieb_trace(x, y, h, step) - base) / step - deriv); };
    const double e0 = err(1e-2), e1 = err(1e-3), e2 = err(1e-4);
    REQUIRE((e1 < e0 || e0 < 1e-12));
    REQUIRE(e2 < 10.0 * e1 + 1e-12);
    REQUIRE(e2 <= 1e-3 * std::max(1.0, std::abs(deriv)));
  }
}

TEST_CASE("trace_exp_functional") {
  const auto a = random_pd(3, {0.05, 5.0}, RngSeed{10});
  CHECK(trace_exp_functional(a, HermitianMatrix::zero(3), ComplexMatrix::identity(3)) ==
        doctest::Approx(a.trace()).epsilon(1e-12));
  CHECK(trace_exp_functional(pd(scalar(4.0)), HermitianMatrix(scalar(0.0)), cm(scalar(0.5))) ==
        doctest::Approx(1.414213562373095049).epsilon(1e-15));

  Rng rng(RngSeed{11});
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 1 + trial % 5, n = 1 + (trial / 5) % 5;
    const auto x = random_pd(m, {0.05, 5.0}, rng);
    const auto l = random_hermitian(n, 1.0, rng);
    const auto h = random_contraction_tuple(1, m, n, false, rng)[0];
    const double value = trace_exp_functional(x, l, h);
    REQUIRE(value > 0.0);
    const double ref = ref_phi(x.dense(), l.dense(), h.dense());
    REQUIRE(std::abs(value - ref) <= 1e-10 * ref);
  }
}

TEST_CASE("multi_trace_exp and block lift") {
  CHECK(multi_trace_exp(scalar_pair()) == doctest::Approx(6.0).epsilon(1e-14));
  const auto lift = block_lift(scalar_pair());
  CHECK(lift.A_hat.dim() == 2);
  CHECK(lift.L_hat.dim() == 2);
  CHECK(lift.H_hat.rows() == 2);
  CHECK(lift.H_hat.cols() == 2);
  CHECK(block_lift_trace(lift) == doctest::Approx(7.0).epsilon(1e-14));

  SUBCASE("k = 1 reduces to the single-variable functional") {
    const auto a = random_pd(3, {0.05, 5.0}, RngSeed{12});
    const auto l = random_hermitian(2, 1.0, RngSeed{13});
    const auto h = random_contraction_tuple(1, 3, 2, false, RngSeed{14});
    const MultiInstance inst{l, h, {a}};
    CHECK(std::abs(multi_trace_exp(inst) - trace_exp_functional(a, l, h[0])) <= 1e-12 * multi_trace_exp(inst));
    const auto single = block_lift(inst);
    CHECK(max_abs_diff(single.A_hat.dense(), a.dense()) == 0.0);
    CHECK(max_abs_diff(single.L_hat.dense(), l.dense()) == 0.0);
    CHECK(max_abs_diff(single.H_hat.dense(), h[0].dense()) == 0.0);
  }

  SUBCASE("block structure") {
    Rng rng(RngSeed{15});
    const Index k = 3, m = 2, n = 2;
    MultiInstance inst{random_hermitian(n, 1.0, rng), random_contraction_tuple(k, m, n, false, rng), {}};
    for (Index i = 0; i < k; ++i) inst.A.push_back(random_pd(m, {0.05, 5.0}, rng));
    const auto lifted = block_lift(inst);
    CHECK(lifted.A_hat.dim() == k * m);
    CHECK(lifted.L_hat.dim() == k * n);
    for (Index i = 0; i < k; ++i) {
      CHECK(max_abs_diff(lifted.A_hat.dense().block(i * m, i * m, m, m), inst.A[i].dense()) == 0.0);
      CHECK(max_abs_diff(lifted.H_hat.dense().block(i * m, 0, m, n), inst.H[i].dense()) == 0.0);
      CHECK(lifted.H_hat.dense().block(i * m, n, m, (k - 1) * n).norm() == 0.0);
    }
    CHECK(lifted.L_hat.dense().bottomRightCorner((k - 1) * n, (k - 1) * n).norm() == 0.0);
    const auto spectrum = spectral_decompose(lifted.A_hat.hermitian());
    CHECK((spectrum.eigenvalues - lifted.A_hat.spectrum().eigenvalues).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(block_lift_trace(lifted) - (multi_trace_exp(inst) + (k - 1) * n)) <=
          1e-9 * (1.0 + multi_trace_exp(inst)));
  }

  SUBCASE("identity with additive term (k - 1) n on random instances") {
    Rng rng(RngSeed{16});
    for (int trial = 0; trial < 200; ++trial) {
      const Index k = 1 + trial % 4, m = 1 + (trial / 4) % 4, n = 1 + (trial / 16) % 4;
      MultiInstance inst{random_hermitian(n, 1.0, rng), random_contraction_tuple(k, m, n, false, rng), {}};
      for (Index i = 0; i < k; ++i) inst.A.push_back(random_pd(m, {0.05, 5.0}, rng));
      const double direct = multi_trace_exp(inst);
      // Direct reference through the Pade path.
      DenseMatrix exponent = inst.L.dense();
      for (Index i = 0; i < k; ++i) {
        exponent += inst.H[i].dense().adjoint() * oracle_logm(inst.A[i].dense()) * inst.H[i].dense();
      }
      REQUIRE(std::abs(direct - oracle_trace(oracle_expm(exponent))) <= 1e-9 * (1.0 + direct));
      REQUIRE(std::abs(block_lift_trace(block_lift(inst)) - (direct + (k - 1) * n)) <= 1e-9 * (1.0 + direct));
    }
  }

  SUBCASE("dimension validation") {
    MultiInstance bad = scalar_pair();
    bad.A.pop_back();
    CHECK_THROWS_AS(multi_trace_exp(bad), Error);
  }
}

TEST_CASE("positive homogeneity under sum H* H = I") {
  Rng rng(RngSeed{17});
  for (int trial = 0; trial < 100; ++trial) {
    const Index k = 1 + trial % 3, m = 1 + (trial / 3) % 3, n = 1 + (trial / 9) % 3;
    if (k * m < n) continue;
    MultiInstance inst{random_hermitian(n, 1.0, rng), random_contraction_tuple(k, m, n, true, rng), {}};
    for (Index i = 0; i < k; ++i) inst.A.push_back(random_pd(m, {0.05, 5.0}, rng));
    const double base = multi_trace_exp(inst);
    for (double t : {0.5, 2.0, 10.0}) {
      MultiInstance scaled = inst;
      for (auto& a : scaled.A) a = PositiveDefiniteMatrix(HermitianMatrix(t * a.dense()));
      REQUIRE(std::abs(multi_trace_exp(scaled) - t * base) <= 1e-9 * t * base);
    }
  }
  // A strict scalar contraction is not homogeneous: (t a)^(h^2) != t a^(h^2).
  const auto strict = [](double a) {
    return trace_exp_functional(pd(scalar(a)), HermitianMatrix(scalar(0.0)), ComplexMatrix(scalar(0.6)));
  };
  CHECK(std::abs(strict(20.0) - 10.0 * strict(2.0)) > 1.0);
}

TEST_CASE("GT-Jensen functionals") {
  const auto scalar_inst = [](double l, double b) {
    return ExponentInstance{HermitianMatrix(scalar(l)), ContractionTuple::single(ComplexMatrix(scalar(1.0)), true),
                            {HermitianMatrix(scalar(b))}};
  };
  const auto s = scalar_inst(0.3, -1.1);
  CHECK(gt_jensen_rhs(s) == doctest::Approx(0.449328964117221591).epsilon(1e-14));
  CHECK(std::abs(gt_jensen_lhs(s) - gt_jensen_rhs(s)) <= 1e-12);
  CHECK(std::abs(golden_thompson_route(s) - gt_jensen_rhs(s)) <= 1e-12);

  const auto b = random_hermitian(3, 1.0, RngSeed{18});
  const ExponentInstance plain{HermitianMatrix::zero(3), ContractionTuple::single(ComplexMatrix::identity(3), true),
                               {b}};
  CHECK(gt_jensen_rhs(plain) == doctest::Approx(trace_exp(b)).epsilon(1e-12));

  Rng rng(RngSeed{19});
  for (int trial = 0; trial < 100; ++trial) {
    const Index k = 1 + trial % 3, m = 1 + (trial / 3) % 3, n = 1 + (trial / 9) % 3;
    if (k * m < n) continue;
    ExponentInstance inst{random_hermitian(n, 1.0, rng), random_contraction_tuple(k, m, n, true, rng), {}};
    for (Index i = 0; i < k; ++i) inst.B.push_back(random_hermitian(m, 1.0, rng));
    DenseMatrix weighted = DenseMatrix::Zero(n, n);
    DenseMatrix exponent = inst.L.dense();
    for (Index i = 0; i < k; ++i) {
      const DenseMatrix& h = inst.H[i].dense();
      weighted += h.adjoint() * oracle_expm(inst.B[i].dense()) * h;
      exponent += h.adjoint() * inst.B[i].dense() * h;
    }
    const double rhs_ref = oracle_trace(oracle_expm(inst.L.dense()) * weighted);
    REQUIRE(std::abs(gt_jensen_rhs(inst) - rhs_ref) <= 1e-10 * (1.0 + rhs_ref));
    const double lhs_ref = oracle_trace(oracle_expm(exponent));
    REQUIRE(std::abs(gt_jensen_lhs(inst) - lhs_ref) <= 1e-10 * (1.0 + lhs_ref));
    REQUIRE(gt_jensen_lhs(inst) <= gt_jensen_rhs(inst) + 1e-9 * (1.0 + rhs_ref));
  }
}

TEST_CASE("gibbs_objective") {
  const auto b = random_pd(4, {0.05, 5.0}, RngSeed{20});
  CHECK(gibbs_objective(b, b) == doctest::Approx(b.trace()).epsilon(1e-12));
  Rng rng(RngSeed{21});
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_pd(4, {0.05, 5.0}, rng);
    REQUIRE(gibbs_objective(x, b) <= b.trace() + 1e-10 * b.trace());
  }
  // Scalar calculus: x ln b - x ln x + x peaks at x = b.
  const auto f = [](double x) { return gibbs_objective(pd(scalar(x)), pd(scalar(2.0))); };
  CHECK(f(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f(1.9) < f(2.0));
  CHECK(f(2.1) < f(2.0));
}

TEST_CASE("phi_objective at the closed-form maximizer") {
  Rng rng(RngSeed{22});
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    const auto a = random_pd(m, {0.05, 5.0}, rng);
    const auto l = random_hermitian(n, 1.0, rng);
    const auto h = random_contraction_tuple(1, m, n, false, rng)[0];
    const auto x = matrix_exp(trace_exp_exponent(a, l, h));
    const double target = trace_exp_functional(a, l, h);
    REQUIRE(std::abs(phi_objective(x, a, l, h) - target) <= 1e-9 * std::abs(target));
    const auto other = random_pd(n, {0.05, 5.0}, rng);
    REQUIRE(phi_objective(other, a, l, h) <= target + 1e-9 * std::abs(target));
  }
  CHECK_THROWS_AS(phi_objective(pd(scalar(1.0)), pd(scalar(1.0)), HermitianMatrix(diag({0.0, 0.0})),
                                ComplexMatrix(scalar(0.5))),
                  Error);
}
