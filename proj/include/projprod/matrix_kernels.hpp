#pragma once

#include "projprod/tensor.hpp"

namespace projprod {

// Relative cutoff used everywhere a numerical rank decision is made.
inline constexpr double kDefaultRankTol = 1e-12;

struct SvdResult {
    Matrix U;  // m x r, orthonormal columns
    Vector s;  // length r, descending, nonnegative
    Matrix V;  // n x r, orthonormal columns
};

// Thin SVD (r = min(m,n)) with a deterministic sign convention: in each U
// column the entry of largest magnitude (first such index on ties) is made
// nonnegative, and the matching V column is flipped with it.
SvdResult svd(const Matrix& A);

// Thin SVD truncated to the leading k triplets; 1 <= k <= min(m,n).
SvdResult truncated_svd(const Matrix& A, Index k);

// Orthonormal basis of range(A) for full-column-rank A (n x p, p <= n),
// via Householder QR. Sign convention: first entry of nonnegligible
// magnitude in each column is made positive. An input that is already
// orthonormal with that sign pattern comes back unchanged up to rounding.
Matrix orthonormalize(const Matrix& A);

// Orthonormal basis of the orthogonal complement of range(Q) for Q with
// orthonormal columns; returns an n x (n-p) matrix (zero columns if p = n).
Matrix orthonormal_complement(const Matrix& Q);

// Number of values with s(i) > tol_rel * s(0); s must be descending.
Index numerical_rank(const Vector& s, double tol_rel = kDefaultRankTol);

}  // namespace projprod
