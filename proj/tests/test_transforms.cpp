#include <cmath>

#include "doctest.h"
#include "projprod/errors.hpp"
#include "projprod/star_products.hpp"
#include "projprod/transforms.hpp"
#include "support/common.hpp"

using namespace projprod;

TEST_CASE("identity transform picks leading canonical columns") {
    Transform full = identity_transform(4, 4);
    CHECK((full.Q - Matrix::Identity(4, 4)).norm() == 0.0);

    Transform part = identity_transform(4, 2);
    REQUIRE(part.Q.rows() == 4);
    REQUIRE(part.Q.cols() == 2);
    CHECK(part.Q.col(0) == Matrix::Identity(4, 4).col(0));
    CHECK(part.Q.col(1) == Matrix::Identity(4, 4).col(1));

    // p = n3: the projected product leaves frontal structure untouched,
    // so A x3 Q^T followed by x3 Q is exactly A.
    Tensor3 A = testsup::random_tensor(3, 2, 4, 77);
    Tensor3 round = mode3_product(mode3_product(A, full.Q.transpose()), full.Q);
    CHECK(frobenius_norm(A - round) <= 1e-14 * frobenius_norm(A));
}

TEST_CASE("random orthogonal transform is seeded and on the Stiefel manifold") {
    Transform T = random_orthogonal_transform(8, 5, 1);
    REQUIRE(T.Q.rows() == 8);
    REQUIRE(T.Q.cols() == 5);
    Matrix gram = T.Q.transpose() * T.Q;
    CHECK((gram - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);

    Transform again = random_orthogonal_transform(8, 5, 1);
    CHECK(T.Q == again.Q);  // same seed, bitwise identical

    Transform other = random_orthogonal_transform(8, 5, 2);
    CHECK((T.Q - other.Q).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("dct transform matches the orthonormal DCT-II basis") {
    Transform one = dct_transform(6, 1);
    for (Index t = 0; t < 6; ++t)
        CHECK(std::abs(one.Q(t, 0) - 1.0 / std::sqrt(6.0)) <= 1e-14);

    Transform full = dct_transform(4, 4);
    Matrix gram = full.Q.transpose() * full.Q;
    CHECK((gram - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);

    // A constant tube is pure DC: after Q^T it lives entirely in entry 0.
    const double c = -2.5;
    Vector tube = Vector::Constant(4, c);
    Vector hat = full.Q.transpose() * tube;
    CHECK(std::abs(hat(0) - c * std::sqrt(4.0)) <= 1e-12);
    for (Index j = 1; j < 4; ++j) CHECK(std::abs(hat(j)) <= 1e-12);
}

TEST_CASE("data-dependent transform recovers mode-3 left singular vectors") {
    Tensor3 A = testsup::counterexample();
    Transform T = data_dependent_transform(A, 2);
    // The unfolding's left basis is I2 up to column permutation and sign.
    Matrix absQ = T.Q.cwiseAbs();
    bool direct = (absQ - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12;
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    bool swapped = (absQ - swap).cwiseAbs().maxCoeff() <= 1e-12;
    CHECK((direct || swapped));

    // Rank-one mode-3 structure: every tube is a multiple of v, so the
    // p = 1 data basis must be +-v.
    Vector v(3);
    v << 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0;
    Tensor3 B(2, 2, 3);
    Matrix C = testsup::random_matrix(2, 2, 5);
    for (Index k = 0; k < 3; ++k)
        for (Index j = 0; j < 2; ++j)
            for (Index i = 0; i < 2; ++i) B(i, j, k) = C(i, j) * v(k);
    Transform R1 = data_dependent_transform(B, 1);
    double align = std::min((R1.Q.col(0) - v).norm(), (R1.Q.col(0) + v).norm());
    CHECK(align <= 1e-12);

    // p = n3 keeps everything.
    Tensor3 G = testsup::random_tensor(4, 3, 5, 11);
    Transform full = data_dependent_transform(G, 5);
    CHECK(projection_error(G, full) <= 1e-10);
}

TEST_CASE("haar transform pins the 4-point and 2-point matrices") {
    Transform T = haar_transform(4, 2);
    const double s = std::sqrt(2.0);
    Matrix want(4, 2);
    want << 1, 1,
            1, 1,
            s, -s,
            0, 0;
    want *= 0.5;
    CHECK((T.Q - want).cwiseAbs().maxCoeff() <= 1e-12);

    Transform two = haar_transform(2, 1);
    CHECK(std::abs(two.Q(0, 0) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(two.Q(1, 0) - 1.0 / std::sqrt(2.0)) <= 1e-15);

    Transform fullT = haar_transform(4, 4);
    Matrix gram = fullT.Q.transpose() * fullT.Q;
    CHECK((gram - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(haar_transform(3, 2), argument_error);
    CHECK_THROWS_AS(haar_transform(8, 2), argument_error);
}

TEST_CASE("projection error measures the discarded component") {
    // Single tube a = [2,4,6,8] against the 2-column Haar basis: the
    // projector keeps [10,10,-4,-4]/... leaving squared error 66.
    Tensor3 A(1, 1, 4);
    A(0, 0, 0) = 2;
    A(0, 0, 1) = 4;
    A(0, 0, 2) = 6;
    A(0, 0, 3) = 8;
    Transform T = haar_transform(4, 2);
    CHECK(std::abs(projection_error(A, T) - std::sqrt(66.0)) <= 1e-12);

    // p = n3 discards nothing.
    Tensor3 G = testsup::random_tensor(3, 4, 4, 21);
    CHECK(projection_error(G, haar_transform(4, 4)) <= 1e-10);

    // Counterexample against its own leading data column: the second
    // singular direction carries squared mass 2.
    Tensor3 Cx = testsup::counterexample();
    Transform D = data_dependent_transform(Cx, 1);
    double err = projection_error(Cx, D);
    CHECK(err * err == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("custom transform validates its basis") {
    Matrix ok(3, 2);
    ok << 1, 0, 0, 1, 0, 0;
    Transform T = custom_transform(ok, 2.0);
    CHECK(T.scale == 2.0);
    CHECK(T.kind == TransformKind::Custom);

    Matrix bad(3, 2);
    bad << 1, 1, 0, 1, 0, 0;  // columns not orthonormal
    CHECK_THROWS_AS(custom_transform(bad), degenerate_input_error);
    CHECK_THROWS_AS(custom_transform(ok, 0.0), argument_error);
}

TEST_CASE("complement basis completes each kind to a full orthogonal matrix") {
    Tensor3 A = testsup::random_tensor(3, 3, 6, 9);
    Transform kinds[] = {
        identity_transform(6, 2),
        random_orthogonal_transform(6, 3, 4),
        dct_transform(6, 4),
        data_dependent_transform(A, 2),
    };
    for (const Transform& T : kinds) {
        Matrix C = complement_basis(T);
        REQUIRE(C.rows() == 6);
        REQUIRE(C.cols() == 6 - T.p());
        Matrix full(6, 6);
        full << T.Q, C;
        CHECK((full.transpose() * full - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <=
              1e-10 * 6);
    }

    // Structured kinds must return the canonical remainder, not merely any
    // orthonormal complement: for identity that is the trailing columns.
    Matrix CI = complement_basis(identity_transform(6, 2));
    CHECK((CI - Matrix::Identity(6, 6).rightCols(4)).cwiseAbs().maxCoeff() == 0.0);

    Matrix CD = complement_basis(dct_transform(6, 4));
    Matrix fullDct = dct_transform(6, 6).Q;
    CHECK((CD - fullDct.rightCols(2)).cwiseAbs().maxCoeff() <= 1e-14);

    // p = n3: empty complement.
    CHECK(complement_basis(identity_transform(5, 5)).cols() == 0);
}

TEST_CASE("transform argument validation") {
    CHECK_THROWS_AS(identity_transform(0, 0), argument_error);
    CHECK_THROWS_AS(identity_transform(4, 5), argument_error);
    CHECK_THROWS_AS(identity_transform(4, 0), argument_error);
    CHECK_THROWS_AS(dct_transform(4, -1), argument_error);
    CHECK_THROWS_AS(random_orthogonal_transform(3, 4, 0), argument_error);
}
