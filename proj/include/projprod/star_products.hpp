#pragma once

#include <optional>

#include "projprod/transforms.hpp"

namespace projprod {

// A transform plus (optionally) a materialized orthonormal complement of its
// column space. The complement is only needed by the split/annihilation
// diagnostics; plain products never pay for it.
struct StarContext {
    Transform transform;
    std::optional<Matrix> complement;  // n3 x (n3 - p)

    explicit StarContext(Transform T) : transform(std::move(T)) {}

    // Same context with Q-perp computed (empty complement when p = n3).
    static StarContext with_complement(Transform T);
};

// Invertible-transform product: ((A x3 M) facewise (B x3 M)) x3 M^{-1}.
// M must be square n3 x n3 and numerically nonsingular.
Tensor3 star_m_product(const Tensor3& A, const Tensor3& B, const Matrix& M);

// Projected product: ((A x3 Q^T) facewise (B x3 Q^T)) x3 Q, then times the
// context's scale factor (a scaled basis W = cQ scales the product by c).
Tensor3 star_q_product(const Tensor3& A, const Tensor3& B, const StarContext& ctx);

// The m x m x n3 identity of the projected algebra: identity slices in the
// transform domain pushed back through Q (divided by the scale so that
// star_q_product(I, A, ctx) is always A x3 QQ^T).
Tensor3 star_q_identity(Index m, const StarContext& ctx);

// Projected-algebra transpose: slice-wise transpose in the transform domain.
Tensor3 star_q_transpose(const Tensor3& A, const StarContext& ctx);

// True when U^T * U and U * U^T both reproduce the projected identity to
// tol (Frobenius, normalized by sqrt(m*p)). Non-square slices return false.
bool is_star_q_unitary(const Tensor3& U, const StarContext& ctx, double tol);

// True when every off-diagonal tube of D has norm <= tol * ||D||_F.
bool is_f_diagonal(const Tensor3& D, double tol);

// Residual of the split identity
//   A *_M B = A *_Q' B + A *_Qperp' B  with M = [Q Qperp]^T:
// returns the Frobenius norm of the difference (complement required; empty
// complement at p = n3 contributes a zero term).
double split_identity_check(const Tensor3& A, const Tensor3& B,
                            const StarContext& ctx);

// Frobenius norm of (A *_Q' B) x3 Qperp^T, which is exactly zero in exact
// arithmetic: the projected product lives in the Q band of mode 3.
double transform_annihilation_check(const Tensor3& A, const Tensor3& B,
                                    const StarContext& ctx);

}  // namespace projprod
