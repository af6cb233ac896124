#include "projprod/tensor.hpp"

#include <cmath>
#include <string>

#include "projprod/errors.hpp"
#include "projprod/parallel.hpp"

namespace projprod {

namespace {

std::string shape_str(const Tensor3& A) {
    return std::to_string(A.n1()) + "x" + std::to_string(A.n2()) + "x" +
           std::to_string(A.n3());
}

}  // namespace

Tensor3::Tensor3(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1)
        throw shape_error("tensor extents must be positive, got " +
                          std::to_string(n1) + "x" + std::to_string(n2) + "x" +
                          std::to_string(n3));
    buf_.assign(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
                    static_cast<std::size_t>(n3),
                0.0);
}

Tensor3 Tensor3::from_slices(const std::vector<Matrix>& slices) {
    if (slices.empty()) throw shape_error("from_slices: empty slice list");
    const Index n1 = slices[0].rows();
    const Index n2 = slices[0].cols();
    Tensor3 out(n1, n2, static_cast<Index>(slices.size()));
    for (Index k = 0; k < out.n3(); ++k) {
        const Matrix& S = slices[static_cast<std::size_t>(k)];
        if (S.rows() != n1 || S.cols() != n2)
            throw shape_error("from_slices: slice " + std::to_string(k) +
                              " has mismatched shape");
        out.slice(k) = S;
    }
    return out;
}

Eigen::Map<const Matrix> Tensor3::slice(Index k) const {
    return {buf_.data() + k * n1_ * n2_, n1_, n2_};
}

Eigen::Map<Matrix> Tensor3::slice(Index k) {
    return {buf_.data() + k * n1_ * n2_, n1_, n2_};
}

Eigen::Map<const Matrix> Tensor3::tubes_view() const {
    return {buf_.data(), n1_ * n2_, n3_};
}

Eigen::Map<Matrix> Tensor3::tubes_view() {
    return {buf_.data(), n1_ * n2_, n3_};
}

Matrix frontal_slice(const Tensor3& A, Index k) {
    if (k < 0 || k >= A.n3())
        throw bounds_error("frontal_slice: k=" + std::to_string(k) +
                           " outside [0," + std::to_string(A.n3()) + ")");
    return A.slice(k);
}

Vector tube(const Tensor3& A, Index i, Index j) {
    if (i < 0 || i >= A.n1() || j < 0 || j >= A.n2())
        throw bounds_error("tube: (" + std::to_string(i) + "," +
                           std::to_string(j) + ") outside " + shape_str(A));
    return A.tubes_view().row(i + j * A.n1()).transpose();
}

Matrix mode3_unfold(const Tensor3& A) { return A.tubes_view().transpose(); }

Tensor3 mode3_fold(const Matrix& U, Index n1, Index n2, Index n3) {
    if (U.rows() != n3 || U.cols() != n1 * n2)
        throw shape_error("mode3_fold: unfolding is " + std::to_string(U.rows()) +
                          "x" + std::to_string(U.cols()) + ", expected " +
                          std::to_string(n3) + "x" + std::to_string(n1 * n2));
    Tensor3 out(n1, n2, n3);
    out.tubes_view() = U.transpose();
    return out;
}

Matrix mode_unfold(const Tensor3& A, int mode) {
    switch (mode) {
        case 1: {
            Matrix out(A.n1(), A.n2() * A.n3());
            for (Index k = 0; k < A.n3(); ++k)
                out.middleCols(k * A.n2(), A.n2()) = A.slice(k);
            return out;
        }
        case 2: {
            Matrix out(A.n2(), A.n1() * A.n3());
            for (Index k = 0; k < A.n3(); ++k)
                out.middleCols(k * A.n1(), A.n1()) = A.slice(k).transpose();
            return out;
        }
        case 3:
            return mode3_unfold(A);
        default:
            throw argument_error("mode_unfold: mode must be 1, 2 or 3, got " +
                                 std::to_string(mode));
    }
}

Tensor3 mode_product(const Tensor3& A, const Matrix& M, int mode) {
    const Index q = M.rows();
    switch (mode) {
        case 1: {
            if (M.cols() != A.n1())
                throw shape_error("mode_product(1): M has " +
                                  std::to_string(M.cols()) + " cols, tensor n1=" +
                                  std::to_string(A.n1()));
            Tensor3 out(q, A.n2(), A.n3());
            parallel_for(A.n3(), [&](Index k) { out.slice(k) = M * A.slice(k); });
            return out;
        }
        case 2: {
            if (M.cols() != A.n2())
                throw shape_error("mode_product(2): M has " +
                                  std::to_string(M.cols()) + " cols, tensor n2=" +
                                  std::to_string(A.n2()));
            Tensor3 out(A.n1(), q, A.n3());
            parallel_for(A.n3(),
                         [&](Index k) { out.slice(k) = A.slice(k) * M.transpose(); });
            return out;
        }
        case 3:
            return mode3_product(A, M);
        default:
            throw argument_error("mode_product: mode must be 1, 2 or 3, got " +
                                 std::to_string(mode));
    }
}

Tensor3 mode3_product(const Tensor3& A, const Matrix& M) {
    if (M.cols() != A.n3())
        throw shape_error("mode3_product: M has " + std::to_string(M.cols()) +
                          " cols, tensor n3=" + std::to_string(A.n3()));
    Tensor3 out(A.n1(), A.n2(), M.rows());
    // (A x_3 M)'s tube matrix is A's tube matrix times M^T.
    out.tubes_view() = A.tubes_view() * M.transpose();
    return out;
}

Tensor3 facewise_product(const Tensor3& A, const Tensor3& B) {
    if (A.n2() != B.n1() || A.n3() != B.n3())
        throw shape_error("facewise_product: " + shape_str(A) + " vs " +
                          shape_str(B));
    Tensor3 out(A.n1(), B.n2(), A.n3());
    parallel_for(A.n3(), [&](Index k) { out.slice(k) = A.slice(k) * B.slice(k); });
    return out;
}

double frobenius_norm(const Tensor3& A) { return A.tubes_view().norm(); }

Tensor3 operator+(const Tensor3& A, const Tensor3& B) {
    if (!A.same_shape(B))
        throw shape_error("tensor sum: " + shape_str(A) + " vs " + shape_str(B));
    Tensor3 out = A;
    out.tubes_view() += B.tubes_view();
    return out;
}

Tensor3 operator-(const Tensor3& A, const Tensor3& B) {
    if (!A.same_shape(B))
        throw shape_error("tensor difference: " + shape_str(A) + " vs " +
                          shape_str(B));
    Tensor3 out = A;
    out.tubes_view() -= B.tubes_view();
    return out;
}

Tensor3 operator*(double c, const Tensor3& A) {
    Tensor3 out = A;
    out.tubes_view() *= c;
    return out;
}

}  // namespace projprod
