#include "projprod/star_products.hpp"

#include <cmath>
#include <string>

#include "projprod/errors.hpp"
#include "projprod/matrix_kernels.hpp"

namespace projprod {

namespace {

void check_product_shapes(const Tensor3& A, const Tensor3& B, Index n3) {
    if (A.n2() != B.n1())
        throw shape_error("star product: inner extents differ (" +
                          std::to_string(A.n2()) + " vs " +
                          std::to_string(B.n1()) + ")");
    if (A.n3() != n3 || B.n3() != n3)
        throw shape_error("star product: mode-3 extents must match the transform");
}

const Matrix& require_complement(const StarContext& ctx, const char* who) {
    if (!ctx.complement)
        throw argument_error(std::string(who) +
                             ": context has no materialized complement; "
                             "use StarContext::with_complement");
    return *ctx.complement;
}

}  // namespace

StarContext StarContext::with_complement(Transform T) {
    StarContext ctx(std::move(T));
    ctx.complement = complement_basis(ctx.transform);
    return ctx;
}

Tensor3 star_m_product(const Tensor3& A, const Tensor3& B, const Matrix& M) {
    if (M.rows() != M.cols())
        throw shape_error("star_m_product: M must be square");
    check_product_shapes(A, B, M.rows());
    SvdResult dec = svd(M);
    if (numerical_rank(dec.s, kDefaultRankTol) < M.rows())
        throw degenerate_input_error("star_m_product: M is numerically singular");
    // M^{-1} from the SVD; every singular value is safely nonzero here.
    Matrix Minv = dec.V * dec.s.cwiseInverse().asDiagonal() * dec.U.transpose();
    Tensor3 Chat = facewise_product(mode3_product(A, M), mode3_product(B, M));
    return mode3_product(Chat, Minv);
}

Tensor3 star_q_product(const Tensor3& A, const Tensor3& B, const StarContext& ctx) {
    const Transform& T = ctx.transform;
    check_product_shapes(A, B, T.n3());
    Matrix Qt = T.Q.transpose();
    Tensor3 Chat = facewise_product(mode3_product(A, Qt), mode3_product(B, Qt));
    Tensor3 C = mode3_product(Chat, T.Q);
    if (T.scale != 1.0) C = T.scale * C;
    return C;
}

Tensor3 star_q_identity(Index m, const StarContext& ctx) {
    if (m < 1) throw argument_error("star_q_identity: m must be positive");
    const Transform& T = ctx.transform;
    Tensor3 Ihat(m, m, T.p());
    for (Index i = 0; i < T.p(); ++i)
        Ihat.slice(i) = Matrix::Identity(m, m);
    Tensor3 I = mode3_product(Ihat, T.Q);
    // Under a scaled basis the product gains a factor c, so the identity
    // sheds one to stay neutral.
    if (T.scale != 1.0) I = (1.0 / T.scale) * I;
    return I;
}

Tensor3 star_q_transpose(const Tensor3& A, const StarContext& ctx) {
    const Transform& T = ctx.transform;
    if (A.n3() != T.n3())
        throw shape_error("star_q_transpose: mode-3 extent " +
                          std::to_string(A.n3()) + " != transform length " +
                          std::to_string(T.n3()));
    Tensor3 Ahat = mode3_product(A, T.Q.transpose());
    Tensor3 Bhat(A.n2(), A.n1(), T.p());
    for (Index i = 0; i < T.p(); ++i)
        Bhat.slice(i) = Ahat.slice(i).transpose();
    return mode3_product(Bhat, T.Q);
}

bool is_star_q_unitary(const Tensor3& U, const StarContext& ctx, double tol) {
    if (U.n1() != U.n2()) return false;
    if (U.n3() != ctx.transform.n3()) return false;
    const Index m = U.n1();
    Tensor3 I = star_q_identity(m, ctx);
    Tensor3 Ut = star_q_transpose(U, ctx);
    const double denom = std::sqrt(static_cast<double>(m * ctx.transform.p()));
    const double left = frobenius_norm(star_q_product(Ut, U, ctx) - I) / denom;
    const double right = frobenius_norm(star_q_product(U, Ut, ctx) - I) / denom;
    return left <= tol && right <= tol;
}

bool is_f_diagonal(const Tensor3& D, double tol) {
    const double scale = frobenius_norm(D);
    auto tubes = D.tubes_view();
    for (Index j = 0; j < D.n2(); ++j)
        for (Index i = 0; i < D.n1(); ++i) {
            if (i == j) continue;
            if (tubes.row(i + j * D.n1()).norm() > tol * scale) return false;
        }
    return true;
}

double split_identity_check(const Tensor3& A, const Tensor3& B,
                            const StarContext& ctx) {
    const Matrix& Qperp = require_complement(ctx, "split_identity_check");
    const Transform& T = ctx.transform;
    const Index n3 = T.n3();

    // M stacks the analysis rows of Q and Qperp into a full orthogonal matrix.
    Matrix M(n3, n3);
    M.topRows(T.p()) = T.Q.transpose();
    M.bottomRows(n3 - T.p()) = Qperp.transpose();

    Tensor3 lhs = star_m_product(A, B, M);
    // The identity concerns the unscaled algebra; strip any scale.
    StarContext unit(custom_transform(T.Q));
    Tensor3 rhs = star_q_product(A, B, unit);
    if (Qperp.cols() > 0) {
        StarContext perp(custom_transform(Qperp));
        rhs = rhs + star_q_product(A, B, perp);
    }
    return frobenius_norm(lhs - rhs);
}

double transform_annihilation_check(const Tensor3& A, const Tensor3& B,
                                    const StarContext& ctx) {
    const Matrix& Qperp = require_complement(ctx, "transform_annihilation_check");
    if (Qperp.cols() == 0) return 0.0;
    StarContext unit(custom_transform(ctx.transform.Q));
    Tensor3 C = star_q_product(A, B, unit);
    return frobenius_norm(mode3_product(C, Qperp.transpose()));
}

}  // namespace projprod
