#include "projprod/matrix_kernels.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "projprod/errors.hpp"

namespace projprod {

namespace {

// Largest-magnitude entry of each U column made nonnegative; V follows.
void fix_svd_signs(Matrix& U, Matrix& V) {
    for (Index j = 0; j < U.cols(); ++j) {
        Index imax = 0;
        U.col(j).cwiseAbs().maxCoeff(&imax);
        if (U(imax, j) < 0.0) {
            U.col(j) = -U.col(j);
            V.col(j) = -V.col(j);
        }
    }
}

}  // namespace

SvdResult svd(const Matrix& A) {
    if (A.rows() < 1 || A.cols() < 1)
        throw shape_error("svd: empty matrix");
    if (!A.allFinite()) throw numeric_error("svd: input has non-finite entries");
    Eigen::JacobiSVD<Matrix> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    fix_svd_signs(out.U, out.V);
    return out;
}

SvdResult truncated_svd(const Matrix& A, Index k) {
    const Index r = std::min(A.rows(), A.cols());
    if (k < 1 || k > r)
        throw argument_error("truncated_svd: k=" + std::to_string(k) +
                             " outside [1," + std::to_string(r) + "]");
    SvdResult full = svd(A);
    return {full.U.leftCols(k), full.s.head(k), full.V.leftCols(k)};
}

Matrix orthonormalize(const Matrix& A) {
    const Index n = A.rows();
    const Index p = A.cols();
    if (p < 1 || p > n)
        throw argument_error("orthonormalize: need 1 <= cols <= rows, got " +
                             std::to_string(n) + "x" + std::to_string(p));
    if (!A.allFinite())
        throw numeric_error("orthonormalize: input has non-finite entries");

    // Rank gate first: QR alone would silently orthonormalize noise.
    Eigen::JacobiSVD<Matrix> dec(A);
    const Vector& s = dec.singularValues();
    if (numerical_rank(s, kDefaultRankTol) < p)
        throw degenerate_input_error(
            "orthonormalize: input is rank-deficient (rank " +
            std::to_string(numerical_rank(s, kDefaultRankTol)) + " < " +
            std::to_string(p) + ")");

    Eigen::HouseholderQR<Matrix> qr(A);
    Matrix Q = qr.householderQ() * Matrix::Identity(n, p);
    // First nonnegligible entry of each column made positive.
    for (Index j = 0; j < p; ++j) {
        for (Index i = 0; i < n; ++i) {
            if (std::abs(Q(i, j)) > 1e-12) {
                if (Q(i, j) < 0.0) Q.col(j) = -Q.col(j);
                break;
            }
        }
    }
    return Q;
}

Matrix orthonormal_complement(const Matrix& Q) {
    const Index n = Q.rows();
    const Index p = Q.cols();
    if (p > n)
        throw argument_error("orthonormal_complement: more columns than rows");
    if (p == n) return Matrix(n, 0);
    // Left singular vectors of I - QQ^T for the singular value 1 span the
    // complement; the thin SVD orders them first.
    Matrix P = Matrix::Identity(n, n) - Q * Q.transpose();
    SvdResult dec = svd(P);
    return dec.U.leftCols(n - p);
}

Index numerical_rank(const Vector& s, double tol_rel) {
    if (s.size() == 0) return 0;
    const double cutoff = tol_rel * s(0);
    Index r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;
    // An all-zero spectrum has cutoff 0 and the loop never advances past a
    // zero value, so rank 0 falls out naturally.
    return r;
}

}  // namespace projprod
