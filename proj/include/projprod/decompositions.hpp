#pragma once

#include <optional>
#include <vector>

#include "projprod/matrix_kernels.hpp"
#include "projprod/transforms.hpp"

namespace projprod {

// Error of a low-rank surrogate, split into the two orthogonal pieces the
// projected algebra produces: what truncation discards inside the projected
// subspace and what the projection itself discards. In exact arithmetic
// total^2 = eckart_young^2 + projection^2; `total` is always measured
// directly against the reconstruction so that identity stays a real check.
struct ApproxError {
    double total = 0.0;
    double eckart_young = 0.0;
    double projection = 0.0;
};

// Rank-k projected tensor SVD factors, kept in the transform domain:
// slice i of the approximant is Q-lifted from Uhat[i] * diag(shat[i]) * Vhat[i]^T.
struct TsvdqFactors {
    std::vector<Matrix> Uhat;  // p matrices, n1 x k
    std::vector<Vector> shat;  // p vectors, length k, descending
    std::vector<Matrix> Vhat;  // p matrices, n2 x k
    Transform transform;
    Index k = 0;
    Index n1 = 0, n2 = 0;
};

TsvdqFactors tsvdq(const Tensor3& A, const Transform& T, Index k);
Tensor3 tsvdq_reconstruct(const TsvdqFactors& F);
ApproxError tsvdq_error(const Tensor3& A, const TsvdqFactors& F);

// Largest transform-domain slice rank (the rank of A in the projected algebra).
Index star_q_rank(const Tensor3& A, const Transform& T,
                  double tol_rel = kDefaultRankTol);

// Energy-truncated variant: all transform-domain singular values are sorted
// globally (descending; ties broken by slice index, then by position) and the
// shortest prefix reaching a fraction gamma of their total energy is kept,
// which yields a per-slice multirank rho instead of one k.
struct TsvdqIIFactors {
    std::vector<Matrix> Uhat;        // p matrices, n1 x rho[i]
    std::vector<Vector> shat;        // p vectors, length rho[i]
    std::vector<Matrix> Vhat;        // p matrices, n2 x rho[i]
    std::vector<Index> multirank;    // rho, length p
    double gamma = 0.0;
    Transform transform;
    Index n1 = 0, n2 = 0;

    // kappa = sum of the multirank: total number of kept triplets.
    Index implicit_rank() const;
};

TsvdqIIFactors tsvdq2(const Tensor3& A, const Transform& T, double gamma);
Tensor3 tsvdq2_reconstruct(const TsvdqIIFactors& F);
ApproxError tsvdq2_error(const Tensor3& A, const TsvdqIIFactors& F);

// Tucker baseline via truncated SVDs of the three unfoldings.
struct HosvdFactors {
    Tensor3 core;  // k1 x k2 x k3
    Matrix U1, U2, U3;
};

HosvdFactors hosvd(const Tensor3& A, Index k1, Index k2, Index k3);
Tensor3 hosvd_reconstruct(const HosvdFactors& F);

// Flattened baseline: rank-k SVD of the (n1*n3) x n2 stack of frontal slices.
struct MatrixSvdBaseline {
    SvdResult factors;
    double error = 0.0;  // Frobenius reconstruction error
};

MatrixSvdBaseline matrix_svd_baseline(const Tensor3& A, Index k);

enum class HosvdVariant {
    Full,    // (n1, k2, p): only mode 2 truncated below full
    Square,  // (k2, k2, p)
};

// Largest k2 >= 1 whose HOSVD storage (core + factors) fits within the
// storage of a rank-k projected SVD at width p, or nullopt when even k2 = 1
// does not fit. Used to compare the baselines at matched budgets.
std::optional<Index> hosvd_matched_truncation(Index n1, Index n2, Index n3,
                                              Index k, Index p,
                                              HosvdVariant variant);

}  // namespace projprod
