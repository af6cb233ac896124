#pragma once

#include <Eigen/Core>

#include <vector>

namespace projprod {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense real order-3 tensor of shape n1 x n2 x n3.
//
// Storage contract: one flat buffer, entry (i,j,k) lives at offset
// i + j*n1 + k*n1*n2 (mode-1 fastest). Frontal slice k is therefore the
// contiguous column-major n1 x n2 block starting at k*n1*n2, and the whole
// buffer doubles as the (n1*n2) x n3 column-major matrix whose row i + j*n1
// is the tube (i,j,:) — i.e. the transpose of the mode-3 unfolding.
class Tensor3 {
public:
    Tensor3() = default;

    // Zero-initialized tensor; all extents must be positive.
    Tensor3(Index n1, Index n2, Index n3);

    // Stack of equally-sized frontal slices (must be nonempty).
    static Tensor3 from_slices(const std::vector<Matrix>& slices);

    Index n1() const { return n1_; }
    Index n2() const { return n2_; }
    Index n3() const { return n3_; }
    Index size() const { return static_cast<Index>(buf_.size()); }

    // Unchecked element access (hot paths); see frontal_slice/tube for the
    // checked views.
    double operator()(Index i, Index j, Index k) const {
        return buf_[static_cast<std::size_t>(i + j * n1_ + k * n1_ * n2_)];
    }
    double& operator()(Index i, Index j, Index k) {
        return buf_[static_cast<std::size_t>(i + j * n1_ + k * n1_ * n2_)];
    }

    double* data() { return buf_.data(); }
    const double* data() const { return buf_.data(); }

    // Frontal slice k as a no-copy Eigen view.
    Eigen::Map<const Matrix> slice(Index k) const;
    Eigen::Map<Matrix> slice(Index k);

    // The buffer viewed as the (n1*n2) x n3 matrix described above.
    Eigen::Map<const Matrix> tubes_view() const;
    Eigen::Map<Matrix> tubes_view();

    bool same_shape(const Tensor3& other) const {
        return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
    }

private:
    Index n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<double> buf_;
};

// Copy of frontal slice k; throws bounds_error on a bad index.
Matrix frontal_slice(const Tensor3& A, Index k);

// Copy of tube (i,j,:) as a length-n3 vector; throws bounds_error.
Vector tube(const Tensor3& A, Index i, Index j);

// Mode-3 unfolding A(3): n3 x (n1*n2), column i + j*n1 holds tube (i,j,:).
Matrix mode3_unfold(const Tensor3& A);

// Inverse of mode3_unfold for the given target shape.
Tensor3 mode3_fold(const Matrix& U, Index n1, Index n2, Index n3);

// Mode-m unfolding, m in {1,2,3}. Column orderings:
//   mode 1: n1 x (n2*n3), column j + k*n2
//   mode 2: n2 x (n1*n3), column i + k*n1
//   mode 3: as mode3_unfold
Matrix mode_unfold(const Tensor3& A, int mode);

// A x_m M: contracts mode m with the rows of M (result extent = M.rows()).
// M.cols() must equal the extent of mode m.
Tensor3 mode_product(const Tensor3& A, const Matrix& M, int mode);

// A x_3 M, the workhorse of the transform-domain algebra.
Tensor3 mode3_product(const Tensor3& A, const Matrix& M);

// Slice-wise matrix product: C(:,:,k) = A(:,:,k) * B(:,:,k).
Tensor3 facewise_product(const Tensor3& A, const Tensor3& B);

double frobenius_norm(const Tensor3& A);

Tensor3 operator+(const Tensor3& A, const Tensor3& B);
Tensor3 operator-(const Tensor3& A, const Tensor3& B);
Tensor3 operator*(double c, const Tensor3& A);

}  // namespace projprod
