#pragma once

#include <cstdint>
#include <optional>

#include "projprod/tensor.hpp"

namespace projprod {

enum class TransformKind {
    Identity,
    RandomOrthogonal,
    Dct,
    DataDependent,
    Haar,
    Custom,
};

// Projection transform: Q has p orthonormal columns of length n3 (p <= n3).
// p = n3 recovers a full orthogonal transform. `scale` is the weight c of a
// scaled column basis W = c*Q; it is stored here but only applied by the
// star-product layer, so Q itself always stays on the Stiefel manifold.
struct Transform {
    Matrix Q;
    TransformKind kind = TransformKind::Custom;
    std::optional<std::uint64_t> seed;
    double scale = 1.0;
    // Set when a data-dependent basis had fewer singular vectors than p
    // (n3 > n1*n2) and was padded with an orthonormal completion.
    bool completed_basis = false;

    Index n3() const { return Q.rows(); }
    Index p() const { return Q.cols(); }
};

// First p columns of the identity.
Transform identity_transform(Index n3, Index p);

// First p columns of orth(G) for a seeded Gaussian G (column-major fill).
Transform random_orthogonal_transform(Index n3, Index p, std::uint64_t seed);

// Leading p columns of the orthonormal DCT-II basis:
// Q(t,j) = w(j) cos(pi (2t+1) j / (2 n3)), w(0) = sqrt(1/n3), else sqrt(2/n3).
Transform dct_transform(Index n3, Index p);

// Q = U3(:,1:p) from the SVD of the mode-3 unfolding of A. If the unfolding
// offers fewer than p left singular vectors (only possible when n3 > n1*n2),
// the basis is padded with an orthonormal completion and flagged.
Transform data_dependent_transform(const Tensor3& A, Index p);

// First p columns of the n3-point orthonormal Haar matrix; n3 in {2, 4}.
Transform haar_transform(Index n3, Index p);

// Wrap a user matrix; validates orthonormal columns and scale != 0.
Transform custom_transform(Matrix Q, double scale = 1.0);

// Orthonormal basis of span(Q)^perp, n3 x (n3-p). For the structured kinds
// (identity, Haar, DCT, seeded random orthogonal) this is the remainder of
// the same full basis Q was cut from — the partition [Q Qperp] the projected
// identities are stated with — which matters because the projected product
// depends on the complement's actual columns, not just on their span.
// Data-dependent and custom transforms fall back to the projector's
// singular vectors. Empty (n3 x 0) when p = n3.
Matrix complement_basis(const Transform& T);

// Frobenius norm of A x_3 (I - QQ^T): the part of A the transform discards.
double projection_error(const Tensor3& A, const Transform& T);

}  // namespace projprod
