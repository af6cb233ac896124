#include "projprod/transforms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "projprod/errors.hpp"
#include "projprod/matrix_kernels.hpp"
#include "projprod/rng.hpp"

namespace projprod {

namespace {

void check_dims(Index n3, Index p) {
    if (n3 < 1) throw argument_error("transform: n3 must be positive");
    if (p < 1 || p > n3)
        throw argument_error("transform: p=" + std::to_string(p) +
                             " outside [1," + std::to_string(n3) + "]");
}

void check_stiefel(const Matrix& Q) {
    const Index p = Q.cols();
    const double residual =
        (Q.transpose() * Q - Matrix::Identity(p, p)).norm();
    if (!(residual <= 1e-10 * static_cast<double>(p)))
        throw degenerate_input_error(
            "transform: columns are not orthonormal (residual " +
            std::to_string(residual) + ")");
}

// Full orthonormal DCT-II basis (the transform keeps its leading columns).
Matrix dct_matrix(Index n3) {
    Matrix Q(n3, n3);
    const double n = static_cast<double>(n3);
    for (Index j = 0; j < n3; ++j) {
        const double w = (j == 0) ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (Index t = 0; t < n3; ++t)
            Q(t, j) = w * std::cos(std::numbers::pi * (2.0 * t + 1.0) * j /
                                   (2.0 * n));
    }
    return Q;
}

// Orthonormal Haar matrix for n3 in {2, 4}; columns are the basis vectors.
Matrix haar_matrix(Index n3) {
    Matrix H(n3, n3);
    if (n3 == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        H << r, r, r, -r;
    } else {
        const double s = std::sqrt(2.0);
        H << 1, 1, 1, 1,
             1, 1, -1, -1,
             s, -s, 0, 0,
             0, 0, s, -s;
        H *= 0.5;
    }
    return H;
}

Matrix random_orthogonal_matrix(Index n3, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    Matrix G(n3, n3);
    for (Index j = 0; j < n3; ++j)
        for (Index i = 0; i < n3; ++i) G(i, j) = rng.normal();
    return orthonormalize(G);
}

}  // namespace

Transform identity_transform(Index n3, Index p) {
    check_dims(n3, p);
    Transform T;
    T.Q = Matrix::Identity(n3, p);
    T.kind = TransformKind::Identity;
    return T;
}

Transform random_orthogonal_transform(Index n3, Index p, std::uint64_t seed) {
    check_dims(n3, p);
    Transform T;
    T.Q = random_orthogonal_matrix(n3, seed).leftCols(p);
    T.kind = TransformKind::RandomOrthogonal;
    T.seed = seed;
    return T;
}

Transform dct_transform(Index n3, Index p) {
    check_dims(n3, p);
    Transform T;
    T.Q = dct_matrix(n3).leftCols(p);
    T.kind = TransformKind::Dct;
    return T;
}

Transform data_dependent_transform(const Tensor3& A, Index p) {
    check_dims(A.n3(), p);
    SvdResult dec = svd(mode3_unfold(A));
    Transform T;
    T.kind = TransformKind::DataDependent;
    const Index available = dec.U.cols();  // min(n3, n1*n2)
    if (p <= available) {
        T.Q = dec.U.leftCols(p);
    } else {
        // n3 > n1*n2 and p beyond the unfolding's range: complete the basis.
        Matrix comp = orthonormal_complement(dec.U);
        Matrix Q(A.n3(), p);
        Q.leftCols(available) = dec.U;
        Q.rightCols(p - available) = comp.leftCols(p - available);
        T.Q = std::move(Q);
        T.completed_basis = true;
    }
    return T;
}

Transform haar_transform(Index n3, Index p) {
    if (n3 != 2 && n3 != 4)
        throw argument_error("haar_transform: n3 must be 2 or 4, got " +
                             std::to_string(n3));
    check_dims(n3, p);
    Transform T;
    T.Q = haar_matrix(n3).leftCols(p);
    T.kind = TransformKind::Haar;
    return T;
}

Transform custom_transform(Matrix Q, double scale) {
    check_dims(Q.rows(), Q.cols());
    if (!Q.allFinite())
        throw numeric_error("custom_transform: non-finite entries");
    check_stiefel(Q);
    if (scale == 0.0)
        throw argument_error("custom_transform: scale must be nonzero");
    Transform T;
    T.Q = std::move(Q);
    T.kind = TransformKind::Custom;
    T.scale = scale;
    return T;
}

Matrix complement_basis(const Transform& T) {
    const Index n3 = T.n3();
    const Index p = T.p();
    if (p == n3) return Matrix(n3, 0);
    switch (T.kind) {
        case TransformKind::Identity:
            return Matrix::Identity(n3, n3).rightCols(n3 - p);
        case TransformKind::Haar:
            return haar_matrix(n3).rightCols(n3 - p);
        case TransformKind::Dct:
            return dct_matrix(n3).rightCols(n3 - p);
        case TransformKind::RandomOrthogonal:
            if (T.seed)
                return random_orthogonal_matrix(n3, *T.seed).rightCols(n3 - p);
            break;  // seed lost: treat like a custom basis
        case TransformKind::DataDependent:
        case TransformKind::Custom:
            break;
    }
    return orthonormal_complement(T.Q);
}

double projection_error(const Tensor3& A, const Transform& T) {
    if (T.n3() != A.n3())
        throw shape_error("projection_error: transform rows " +
                          std::to_string(T.n3()) + " != tensor n3 " +
                          std::to_string(A.n3()));
    // ||A - A x3 QQ^T||_F on the tube matrix: rows are tubes, so project
    // each row onto span(Q) and measure what is left.
    auto tubes = A.tubes_view();
    Matrix coeff = tubes * T.Q;                 // (n1*n2) x p
    return (tubes - coeff * T.Q.transpose()).norm();
}

}  // namespace projprod
