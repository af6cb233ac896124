#include <cmath>

#include "doctest.h"
#include "projprod/errors.hpp"
#include "projprod/matrix_kernels.hpp"
#include "support/common.hpp"
#include "support/oracles.hpp"

using namespace projprod;

TEST_CASE("svd contract") {
    Xoshiro256pp rng(21);
    Matrix A = testsup::random_matrix(rng, 7, 5);
    SvdResult d = svd(A);
    const Index r = d.s.size();
    CHECK(r == 5);
    for (Index j = 0; j + 1 < r; ++j) CHECK(d.s(j) >= d.s(j + 1));
    CHECK(d.s(r - 1) >= 0.0);
    CHECK((d.U.transpose() * d.U - Matrix::Identity(r, r)).norm() <= 1e-10 * r);
    CHECK((d.V.transpose() * d.V - Matrix::Identity(r, r)).norm() <= 1e-10 * r);
    CHECK((A - d.U * d.s.asDiagonal() * d.V.transpose()).norm() <=
          1e-10 * A.norm());
}

TEST_CASE("svd pinned values") {
    Matrix A(2, 2);
    A << std::sqrt(2.0), 0, 0, 0;
    SvdResult d = svd(A);
    CHECK(d.s(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(d.s(1)) <= 1e-14);

    SvdResult di = svd(Matrix::Identity(3, 3));
    for (Index j = 0; j < 3; ++j)
        CHECK(di.s(j) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd against the Gram eigenvalue oracle") {
    Xoshiro256pp rng(22);
    Matrix A = testsup::random_matrix(rng, 5, 4);
    SvdResult d = svd(A);
    Vector ev = oracles::jacobi_eigenvalues(A.transpose() * A);
    for (Index j = 0; j < d.s.size(); ++j) {
        const double oracle2 = std::max(0.0, ev(j));
        CHECK(std::abs(d.s(j) * d.s(j) - oracle2) <=
              1e-9 * std::max(1.0, oracle2));
    }
}

TEST_CASE("truncated svd") {
    Matrix A(2, 2);
    A << std::sqrt(2.0), 0, 0, 0;
    SvdResult t = truncated_svd(A, 1);
    CHECK((A - t.U * t.s.asDiagonal() * t.V.transpose()).norm() <= 1e-12);

    Matrix D = Vector::LinSpaced(3, 3, 1).asDiagonal();  // diag(3,2,1)
    SvdResult t2 = truncated_svd(D, 2);
    const double err = (D - t2.U * t2.s.asDiagonal() * t2.V.transpose()).norm();
    CHECK(err * err == doctest::Approx(1.0).epsilon(1e-12));

    Xoshiro256pp rng(23);
    Matrix R = testsup::random_matrix(rng, 6, 4);
    SvdResult tf = truncated_svd(R, 4);
    CHECK((R - tf.U * tf.s.asDiagonal() * tf.V.transpose()).norm() <=
          1e-10 * R.norm());

    CHECK_THROWS_AS(truncated_svd(R, 0), argument_error);
    CHECK_THROWS_AS(truncated_svd(R, 5), argument_error);
}

TEST_CASE("orthonormalize") {
    Xoshiro256pp rng(24);
    Matrix A = testsup::random_matrix(rng, 6, 3);
    Matrix Q = orthonormalize(A);
    CHECK((Q.transpose() * Q - Matrix::Identity(3, 3)).norm() <= 1e-10);
    CHECK((Q - orthonormalize(Q)).norm() <= 1e-12);

    Matrix col(2, 1);
    col << 2, 0;
    Matrix qc = orthonormalize(col);
    CHECK(qc(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(qc(1, 0)) <= 1e-14);

    Matrix wide = testsup::random_matrix(rng, 3, 4);
    CHECK_THROWS_AS(orthonormalize(wide), argument_error);
    Matrix dup = A;
    dup.col(2) = dup.col(0);
    CHECK_THROWS_AS(orthonormalize(dup), degenerate_input_error);
}

TEST_CASE("orthonormal complement") {
    Xoshiro256pp rng(25);
    Matrix Q = orthonormalize(testsup::random_matrix(rng, 5, 2));
    Matrix C = orthonormal_complement(Q);
    CHECK(C.rows() == 5);
    CHECK(C.cols() == 3);
    Matrix full(5, 5);
    full << Q, C;
    CHECK((full.transpose() * full - Matrix::Identity(5, 5)).norm() <= 1e-10);

    Matrix sq = orthonormalize(testsup::random_matrix(rng, 4, 4));
    CHECK(orthonormal_complement(sq).cols() == 0);
}

TEST_CASE("numerical rank") {
    Vector a(3);
    a << 3, 2, 1e-15;
    CHECK(numerical_rank(a, 1e-12) == 2);
    Vector z = Vector::Zero(2);
    CHECK(numerical_rank(z, 1e-12) == 0);
    CHECK(numerical_rank(z, 1e-3) == 0);
    Vector b(2);
    b << std::sqrt(2.0), 0;
    CHECK(numerical_rank(b, 1e-12) == 1);
}
