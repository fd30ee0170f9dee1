// (C) Copyright the entrobound developers 2026.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include <entrobound/linops.hpp>

#include "test_rand.hpp"

using namespace eb;

TEST_SUITE_BEGIN("linops");

TEST_CASE("pauli z spectrum is ascending with matching eigenvectors") {
  cmat Z(2, 2);
  Z << 1.0, 0.0, 0.0, -1.0;
  HermitianOperator op(Z);
  CHECK(op.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(op.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(op.eigenvectors()(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(op.eigenvectors()(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian rejects non-hermitian input with the asymmetry size") {
  cmat X(2, 2);
  X << 1.0, cplx(0.0, 0.5), 0.0, 1.0;
  CHECK_THROWS_WITH_AS(eig_hermitian(X), doctest::Contains("asymmetry"),
                       std::invalid_argument);
}

TEST_CASE("reconstruction residual stays below 1e-10 across dimensions") {
  testrand::Lcg rng(11);
  for (int d : {2, 3, 4, 6, 8, 16, 32, 64}) {
    HermitianOperator op(testrand::random_hermitian(d, rng));
    const cmat recon = op.eigenvectors() * op.eigenvalues().asDiagonal() *
                       op.eigenvectors().adjoint();
    CHECK((op.matrix() - recon).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i + 1 < d; ++i)
      CHECK(op.eigenvalues()(i) <= op.eigenvalues()(i + 1));
  }
}

TEST_CASE("matrix_fn_on_support applies log only on the support") {
  cmat X = cmat::Zero(3, 3);
  X(2, 2) = 2.0;
  const cmat L = log_on_support(X);
  CHECK(std::abs(L(2, 2) - std::log(2.0)) < 1e-14);
  CHECK(L.cwiseAbs().maxCoeff() == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(L(0, 0)) < 1e-14);
  CHECK(std::abs(L(1, 1)) < 1e-14);
}

TEST_CASE("matrix_fn_on_support rejects genuinely negative input") {
  cmat X = cmat::Zero(2, 2);
  X(0, 0) = -0.5;
  X(1, 1) = 1.0;
  CHECK_THROWS_AS(log_on_support(X), std::domain_error);
}

TEST_CASE("matrix_fn_on_support clamps tiny negatives to zero") {
  cmat X = cmat::Zero(2, 2);
  X(0, 0) = -1e-15;
  X(1, 1) = 1.0;
  const cmat L = log_on_support(X);
  CHECK(std::abs(L(0, 0)) < 1e-14);
  CHECK(std::abs(L(1, 1)) < 1e-14);
}

TEST_CASE("matrix_fn_on_support reports non-finite f at a retained eigenvalue") {
  cmat X = cmat::Zero(2, 2);
  X(0, 0) = 2.0;
  X(1, 1) = 1.0;
  auto f = [](double x) { return cplx(1.0 / (x - 2.0), 0.0); };
  CHECK_THROWS_WITH_AS(matrix_fn_on_support(X, f), doctest::Contains("not finite"),
                       std::domain_error);
}

TEST_CASE("functional calculus commutes with the support projector") {
  testrand::Lcg rng(23);
  for (int d : {3, 5, 8}) {
    cmat A = testrand::random_psd_unit_trace(d, rng);
    // deflate one direction to force a kernel
    HermitianOperator op(A);
    const cmat v = op.eigenvectors().col(0);
    A -= op.eigenvalues()(0) * (v * v.adjoint());
    const SupportProjector sp = support_projector(A);
    const cmat F = log_on_support(A);
    CHECK(trace_norm(sp.P * F - F * sp.P) < 1e-9);
    const cmat PP = sp.P * sp.P;
    CHECK((PP - sp.P).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sp.rank == d - 1);
  }
}

TEST_CASE("log of A tensor identity equals log A tensor identity") {
  testrand::Lcg rng(31);
  for (int d : {2, 3, 4}) {
    const cmat A = testrand::random_psd_unit_trace(d, rng);
    const cmat lhs = log_on_support(tensor(A, identity(3)));
    const cmat rhs = tensor(log_on_support(A), identity(3));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("power_on_support at imaginary exponent is unitary on the support") {
  testrand::Lcg rng(37);
  const cmat A = testrand::random_psd_unit_trace(4, rng);
  const cmat U = power_on_support(A, cplx(0.0, 1.0));
  const SupportProjector sp = support_projector(A);
  CHECK((U * U.adjoint() - sp.P).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pos_neg_parts splits a diagonal matrix exactly") {
  cmat X = cmat::Zero(2, 2);
  X(0, 0) = 1.0;
  X(1, 1) = -2.0;
  auto [pos, neg] = pos_neg_parts(X);
  CHECK(std::abs(pos(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(pos(1, 1)) < 1e-14);
  CHECK(std::abs(neg(1, 1) - 2.0) < 1e-14);
  CHECK((pos - neg - X).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("pos_neg_parts reconstructs random hermitian matrices") {
  testrand::Lcg rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const cmat X = testrand::random_hermitian(5, rng);
    auto [pos, neg] = pos_neg_parts(X);
    CHECK((pos - neg - X).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(eig_hermitian(pos).values(0) > -1e-13);
    CHECK(eig_hermitian(neg).values(0) > -1e-13);
    CHECK(std::abs(trace_norm(X) - (pos.trace().real() + neg.trace().real())) < 1e-10);
  }
}

TEST_CASE("trace norm satisfies the triangle inequality on 200 triples") {
  testrand::Lcg rng(43);
  int reps = 0;
  for (int d : {2, 3, 4, 6}) {
    for (int rep = 0; rep < 50; ++rep) {
      const cmat A = testrand::random_psd_unit_trace(d, rng);
      const cmat B = testrand::random_psd_unit_trace(d, rng);
      const cmat C = testrand::random_psd_unit_trace(d, rng);
      CHECK(trace_distance_half(A, C) <=
            trace_distance_half(A, B) + trace_distance_half(B, C) + 1e-12);
      ++reps;
    }
  }
  CHECK(reps == 200);
}

TEST_CASE("trace distance of orthogonal pure states is one") {
  cmat a = cmat::Zero(2, 2), b = cmat::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(trace_distance_half(a, b) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("partial trace collapses a tensor product to its factor") {
  testrand::Lcg rng(47);
  const cmat A = testrand::random_psd_unit_trace(2, rng);
  const cmat B = testrand::random_psd_unit_trace(3, rng);
  const cmat AB = tensor(A, B);
  const DimensionProfile profile{2, 3};
  CHECK((partial_trace(AB, profile, {0}) - A).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((partial_trace(AB, profile, {1}) - B).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("partial trace preserves the trace and composes") {
  testrand::Lcg rng(53);
  const DimensionProfile profile{2, 3, 2};
  const cmat X = testrand::random_psd_unit_trace(12, rng);
  const cmat X0 = partial_trace(X, profile, {0});
  CHECK(std::abs(X0.trace().real() - X.trace().real()) < 1e-12);
  const cmat X01 = partial_trace(X, profile, {0, 1});
  const cmat X0_again = partial_trace(X01, DimensionProfile{2, 3}, {0});
  CHECK((X0 - X0_again).cwiseAbs().maxCoeff() < 1e-12);
  const cmat X02 = partial_trace(X, profile, {0, 2});
  CHECK(std::abs(X02.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("tensor multiplies traces") {
  testrand::Lcg rng(59);
  const cmat A = testrand::random_hermitian(3, rng);
  const cmat B = testrand::random_hermitian(4, rng);
  const cplx t = tensor(A, B).trace();
  CHECK(std::abs(t - A.trace() * B.trace()) < 1e-12);
}

TEST_CASE("embed places an operator on the middle factor") {
  testrand::Lcg rng(61);
  const cmat S = testrand::random_hermitian(3, rng);
  const DimensionProfile profile{2, 3, 2};
  const cmat E = embed(S, profile, 1);
  const cmat expect = tensor(tensor(identity(2), S), identity(2));
  CHECK((E - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kernel_included detects support containment") {
  cmat sigma = cmat::Zero(2, 2);
  sigma(0, 0) = 1.0;
  cmat rho_in = cmat::Zero(2, 2);
  rho_in(0, 0) = 1.0;
  CHECK(kernel_included(sigma, rho_in));
  const cmat rho_out = 0.5 * identity(2);
  CHECK_FALSE(kernel_included(sigma, rho_out));
  CHECK(kernel_leakage(sigma, rho_out) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(kernel_included(identity(2), rho_out));
}

TEST_CASE("min_nonzero_eig skips the kernel") {
  cmat X = cmat::Zero(3, 3);
  X(1, 1) = 0.25;
  X(2, 2) = 0.75;
  HermitianOperator op(X);
  CHECK(op.min_nonzero_eig() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(op.rank() == 2);
  CHECK(op.min_eig() == doctest::Approx(0.0));
}

TEST_CASE("permute_factors reorders tensor products") {
  testrand::Lcg rng(23);
  const cmat A = testrand::random_hermitian(2, rng);
  const cmat B = testrand::random_hermitian(3, rng);
  const cmat C = testrand::random_hermitian(2, rng);
  const DimensionProfile profile{2, 3, 2};
  const cmat abc = tensor({A, B, C});

  const cmat cab = permute_factors(abc, profile, {2, 0, 1});
  CHECK((cab - tensor({C, A, B})).cwiseAbs().maxCoeff() < 1e-14);

  // Undoing the permutation recovers the input exactly.
  const cmat back = permute_factors(cab, DimensionProfile{2, 2, 3}, {1, 2, 0});
  CHECK((back - abc).cwiseAbs().maxCoeff() == 0.0);

  // Marginals commute with the relabeling.
  const cmat direct = partial_trace(abc, profile, {1});
  const cmat via = partial_trace(permute_factors(abc, profile, {1, 0, 2}),
                                 DimensionProfile{3, 2, 2}, {0});
  CHECK((direct - via).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(permute_factors(abc, profile, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_factors(abc, profile, {0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_factors(A, profile, {0, 1, 2}), std::invalid_argument);
}

TEST_SUITE_END();
