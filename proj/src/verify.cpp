#include "projprod/verify.hpp"

#include <Eigen/LU>

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <vector>

#include "projprod/decompositions.hpp"
#include "projprod/errors.hpp"
#include "projprod/io.hpp"
#include "projprod/matrix_kernels.hpp"
#include "projprod/metrics.hpp"
#include "projprod/rng.hpp"
#include "projprod/star_products.hpp"
#include "projprod/tensor.hpp"
#include "projprod/transforms.hpp"

namespace projprod::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double dev, double scale) { return scale > 0.0 ? dev / scale : dev; }

Tensor3 random_tensor(Xoshiro256pp& rng, Index n1, Index n2, Index n3) {
    Tensor3 A(n1, n2, n3);
    for (Index i = 0; i < A.size(); ++i) A.data()[i] = rng.normal();
    return A;
}

Matrix random_matrix(Xoshiro256pp& rng, Index m, Index n) {
    Matrix A(m, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i) A(i, j) = rng.normal();
    return A;
}

// Shared instance stream for the Eckart-Young / tail / optimality suites:
// the same (dims, tensor) sequence regardless of which check replays it.
Tensor3 suite_tensor(std::uint64_t seed, int i) {
    Xoshiro256pp rng(derive_seed(seed, 0xEC0000u + static_cast<unsigned>(i)));
    const Index n1 = 1 + static_cast<Index>(rng.uniform_below(8));
    const Index n2 = 1 + static_cast<Index>(rng.uniform_below(7));
    const Index n3 = 1 + static_cast<Index>(rng.uniform_below(6));
    return random_tensor(rng, n1, n2, n3);
}

// One of the four generally-applicable transform kinds.
Transform kind_transform(int kind, const Tensor3& A, Index p, std::uint64_t seed) {
    switch (kind & 3) {
        case 0: return identity_transform(A.n3(), p);
        case 1: return random_orthogonal_transform(A.n3(), p, seed);
        case 2: return dct_transform(A.n3(), p);
        default: return data_dependent_transform(A, p);
    }
}

// --- independent oracles -----------------------------------------------------

// Eigenvalues of a symmetric matrix by hand-rolled cyclic Jacobi sweeps;
// deliberately not Eigen's solver so the SVD kernel is checked against an
// independent route.
Vector jacobi_eigenvalues(Matrix S) {
    const Index n = S.rows();
    const double scale = std::max(1.0, S.norm());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Index q = 0; q < n; ++q)
            for (Index p = 0; p < q; ++p) off += S(p, q) * S(p, q);
        if (std::sqrt(2.0 * off) <= 1e-15 * scale) break;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) {
                if (S(p, q) == 0.0) continue;
                const double theta = (S(q, q) - S(p, p)) / (2.0 * S(p, q));
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Index r = 0; r < n; ++r) {  // right-multiply by G
                    const double a = S(r, p), b = S(r, q);
                    S(r, p) = c * a - s * b;
                    S(r, q) = s * a + c * b;
                }
                for (Index cc = 0; cc < n; ++cc) {  // left-multiply by G^T
                    const double a = S(p, cc), b = S(q, cc);
                    S(p, cc) = c * a - s * b;
                    S(q, cc) = s * a + c * b;
                }
            }
    }
    Vector ev = S.diagonal();
    std::sort(ev.data(), ev.data() + n, std::greater<double>());
    return ev;
}

// Naive tube-by-tube star-M product used as the entrywise oracle; M^{-1}
// comes from an LU solve, a different route than the product's SVD inverse.
Vector tube_star_m(const Vector& a, const Vector& b, const Matrix& M,
                   const Eigen::PartialPivLU<Matrix>& lu) {
    Vector ahat = M * a;
    Vector bhat = M * b;
    return lu.solve((ahat.array() * bhat.array()).matrix().eval());
}

double tube_dev(const Tensor3& t, const std::vector<double>& want) {
    double d = 0.0;
    for (Index k = 0; k < t.n3(); ++k)
        d = std::max(d, std::abs(t(0, 0, k) - want[static_cast<std::size_t>(k)]));
    return d;
}

Tensor3 make_tube(const std::vector<double>& v) {
    Tensor3 t(1, 1, static_cast<Index>(v.size()));
    for (Index k = 0; k < t.n3(); ++k) t(0, 0, k) = v[static_cast<std::size_t>(k)];
    return t;
}

// --- fixtures ----------------------------------------------------------------

double chk_appendix_a(std::uint64_t, std::string& detail) {
    const Tensor3 a = make_tube({2, 4, 6, 8});
    const Tensor3 b = make_tube({1, -1, 1, 0});
    Transform T = haar_transform(4, 2);
    StarContext ctx = StarContext::with_complement(T);
    const Matrix& Qp = *ctx.complement;
    Matrix M(4, 4);
    M.topRows(2) = T.Q.transpose();
    M.bottomRows(2) = Qp.transpose();

    double d = 0.0;
    d = std::max(d, tube_dev(star_m_product(a, b, M), {2, 4, 3, 8}));
    d = std::max(d, tube_dev(star_q_product(a, b, ctx), {3, 3, 3, 0}));
    StarContext perp(custom_transform(Qp));
    d = std::max(d, tube_dev(star_q_product(a, b, perp), {-1, 1, 0, 8}));
    d = std::max(d, tube_dev(mode3_product(a, T.Q * T.Q.transpose()), {3, 3, 6, 0}));
    d = std::max(d, tube_dev(mode3_product(b, T.Q * T.Q.transpose()), {0, 0, 1, 0}));
    d = std::max(d, tube_dev(mode3_product(a, Qp * Qp.transpose()), {-1, 1, 0, 8}));
    d = std::max(d, tube_dev(mode3_product(b, Qp * Qp.transpose()), {1, -1, 0, 0}));
    d = std::max(d, std::abs(projection_error(a, T) - std::sqrt(66.0)));
    d = std::max(d, split_identity_check(a, b, ctx));
    d = std::max(d, transform_annihilation_check(a, b, ctx));
    detail = "10 pinned values";
    return d;
}

double chk_counterexample(std::uint64_t, std::string& detail) {
    Tensor3 A(2, 2, 2);
    A.slice(0) = Matrix::Identity(2, 2);
    Matrix D(2, 2);
    D << 1, 0, 0, -1;
    A.slice(1) = D;
    double d = 0.0;

    // Optimal mode-3 basis is axis-aligned (up to permutation/negation).
    Transform Tdd = data_dependent_transform(A, 1);
    Matrix absU = data_dependent_transform(A, 2).Q.cwiseAbs();
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    d = std::max(d, std::min((absU - Matrix::Identity(2, 2)).norm(),
                             (absU - swap).norm()));

    // Rank-1 truncation against the best single-column basis: error parts
    // (1, 2); against the averaging basis: parts (0, 2).
    ApproxError e1 = tsvdq_error(A, tsvdq(A, Tdd, 1));
    d = std::max(d, std::abs(e1.total * e1.total - 3.0));
    d = std::max(d, std::abs(e1.eckart_young * e1.eckart_young - 1.0));
    d = std::max(d, std::abs(e1.projection * e1.projection - 2.0));

    Transform Th = haar_transform(2, 1);
    ApproxError e2 = tsvdq_error(A, tsvdq(A, Th, 1));
    d = std::max(d, std::abs(e2.total * e2.total - 2.0));
    d = std::max(d, std::abs(e2.eckart_young * e2.eckart_young - 0.0));
    d = std::max(d, std::abs(e2.projection * e2.projection - 2.0));

    Tensor3 Ahat = mode3_product(A, Th.Q.transpose());
    Matrix want(2, 2);
    want << std::sqrt(2.0), 0, 0, 0;
    d = std::max(d, (Matrix(Ahat.slice(0)) - want).norm());

    // Projected rank collapses to 1 under the averaging basis, stays 2 in full.
    d = std::max(d, std::abs(static_cast<double>(star_q_rank(A, Th)) - 1.0));
    d = std::max(d, std::abs(
        static_cast<double>(star_q_rank(A, identity_transform(2, 2))) - 2.0));

    // Flattened baseline: both stacked singular values are sqrt(2).
    MatrixSvdBaseline mb = matrix_svd_baseline(A, 1);
    d = std::max(d, std::abs(mb.factors.s(0) - std::sqrt(2.0)));
    d = std::max(d, std::abs(mb.error * mb.error - 2.0));

    // Energy-truncated variant at gamma = 1/2 under the identity transform:
    // the sorted-pool tie-break keeps both values of the first slice.
    TsvdqIIFactors F2 = tsvdq2(A, identity_transform(2, 2), 0.5);
    d = std::max(d, std::abs(static_cast<double>(F2.implicit_rank()) - 2.0));
    d = std::max(d, std::abs(static_cast<double>(F2.multirank[0]) - 2.0));
    d = std::max(d, std::abs(static_cast<double>(F2.multirank[1]) - 0.0));
    ApproxError e3 = tsvdq2_error(A, F2);
    d = std::max(d, std::abs(e3.total * e3.total - 2.0));

    // Tucker route spends its whole budget and still leaves error^2 = 2.
    HosvdFactors H = hosvd(A, 2, 2, 1);
    const double he = frobenius_norm(A - hosvd_reconstruct(H));
    d = std::max(d, std::abs(he * he - 2.0));

    detail = "tie-degenerate fixture";
    return d;
}

double chk_scale_law(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x5CA1E));
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 30; ++i) {
        const Index m = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(5));
        const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
        Tensor3 A = random_tensor(rng, n1, m, n3);
        Tensor3 B = random_tensor(rng, m, n2, n3);
        Transform T = kind_transform(i, A, p, rng.next());
        for (double c : {-2.0, 0.5, 3.0}) {
            StarContext unit(custom_transform(T.Q));
            StarContext scaled(custom_transform(T.Q, c));
            Tensor3 ref = c * star_q_product(A, B, unit);
            Tensor3 got = star_q_product(A, B, scaled);
            worst = std::max(worst, rel(frobenius_norm(got - ref),
                                        frobenius_norm(ref)));
            // the scaled identity must still be neutral
            Tensor3 I = star_q_identity(n1, scaled);
            Tensor3 PA = mode3_product(A, T.Q * T.Q.transpose());
            worst = std::max(
                worst, rel(frobenius_norm(star_q_product(I, A, scaled) - PA),
                           frobenius_norm(PA)));
            ++cases;
        }
    }
    detail = std::to_string(cases) + " scaled products";
    return worst;
}

// --- tensor core -------------------------------------------------------------

double chk_tensor_roundtrips(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x7E9508));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(9));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(8));
        const Index n3 = 1 + static_cast<Index>(rng.uniform_below(7));
        Tensor3 A = random_tensor(rng, n1, n2, n3);

        // fold(unfold) must be bit-exact
        Tensor3 R = mode3_fold(mode3_unfold(A), n1, n2, n3);
        worst = std::max(worst, frobenius_norm(R - A) == 0.0 ? 0.0 : kInf);

        // unfoldings agree with the index conventions entry by entry
        Matrix U1 = mode_unfold(A, 1), U2 = mode_unfold(A, 2), U3 = mode_unfold(A, 3);
        for (Index k = 0; k < n3; ++k)
            for (Index j = 0; j < n2; ++j)
                for (Index ii = 0; ii < n1; ++ii) {
                    const double v = A(ii, j, k);
                    if (U1(ii, j + k * n2) != v || U2(j, ii + k * n1) != v ||
                        U3(k, ii + j * n1) != v)
                        worst = kInf;
                }

        // mode products commute with unfolding: unfold_m(A x_m M) = M unfold_m(A)
        for (int mode = 1; mode <= 3; ++mode) {
            const Index ext = mode == 1 ? n1 : (mode == 2 ? n2 : n3);
            Matrix M = random_matrix(rng, 1 + static_cast<Index>(rng.uniform_below(5)), ext);
            Tensor3 P = mode_product(A, M, mode);
            Matrix lhs = mode_unfold(P, mode);
            Matrix rhs = M * mode_unfold(A, mode);
            worst = std::max(worst, rel((lhs - rhs).norm(), rhs.norm()));
        }

        // composition and unitary invariance in mode 3
        Matrix M1 = random_matrix(rng, n3, n3), M2 = random_matrix(rng, n3, n3);
        Tensor3 two = mode3_product(mode3_product(A, M1), M2);
        Tensor3 one = mode3_product(A, Matrix(M2 * M1));
        worst = std::max(worst, rel(frobenius_norm(two - one), frobenius_norm(one)));
        Matrix W = random_orthogonal_transform(n3, n3, rng.next()).Q;
        worst = std::max(worst,
                         rel(std::abs(frobenius_norm(mode3_product(A, W)) -
                                      frobenius_norm(A)),
                             frobenius_norm(A)));

        // facewise product against direct per-slice multiplication
        const Index n4 = 1 + static_cast<Index>(rng.uniform_below(5));
        Tensor3 B = random_tensor(rng, n2, n4, n3);
        Tensor3 C = facewise_product(A, B);
        for (Index k = 0; k < n3; ++k) {
            Matrix want = Matrix(A.slice(k)) * Matrix(B.slice(k));
            worst = std::max(worst, (Matrix(C.slice(k)) - want).norm() == 0.0
                                        ? 0.0 : kInf);
        }
    }
    detail = "50 shapes";
    return worst;
}

// --- matrix kernels ----------------------------------------------------------

double chk_svd_contract(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x51D0));
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Index m = 1 + static_cast<Index>(rng.uniform_below(10));
        const Index n = 1 + static_cast<Index>(rng.uniform_below(8));
        Matrix A;
        if (i % 4 == 1) {  // exactly low-rank
            const Index r = 1 + static_cast<Index>(
                                    rng.uniform_below(static_cast<std::uint64_t>(
                                        std::min(m, n))));
            A = random_matrix(rng, m, r) * random_matrix(rng, r, n);
        } else if (i % 16 == 2) {
            A = Matrix::Zero(m, n);
        } else {
            A = random_matrix(rng, m, n);
        }
        SvdResult dec = svd(A);
        const Index r = dec.s.size();
        worst = std::max(worst, (dec.U.transpose() * dec.U -
                                 Matrix::Identity(r, r)).norm());
        worst = std::max(worst, (dec.V.transpose() * dec.V -
                                 Matrix::Identity(r, r)).norm());
        for (Index j = 0; j + 1 < r; ++j)
            worst = std::max(worst, std::max(0.0, dec.s(j + 1) - dec.s(j)));
        worst = std::max(worst, dec.s.size() ? std::max(0.0, -dec.s(r - 1)) : 0.0);
        Matrix recon = dec.U * dec.s.asDiagonal() * dec.V.transpose();
        worst = std::max(worst, rel((A - recon).norm(), std::max(1.0, A.norm())));
        // sign convention: dominant entry of each U column is nonnegative
        for (Index j = 0; j < r; ++j) {
            Index imax = 0;
            dec.U.col(j).cwiseAbs().maxCoeff(&imax);
            worst = std::max(worst, std::max(0.0, -dec.U(imax, j)));
        }
        // truncation is literally the leading block
        const Index k = 1 + static_cast<Index>(
                                rng.uniform_below(static_cast<std::uint64_t>(r)));
        SvdResult tr = truncated_svd(A, k);
        if ((tr.U - dec.U.leftCols(k)).norm() != 0.0 ||
            (tr.s - dec.s.head(k)).norm() != 0.0 ||
            (tr.V - dec.V.leftCols(k)).norm() != 0.0)
            worst = kInf;
    }
    detail = "200 matrices";
    return worst;
}

double chk_svd_gram_oracle(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x96A3));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Index m = 1 + static_cast<Index>(rng.uniform_below(6));
        const Index n = 1 + static_cast<Index>(rng.uniform_below(6));
        Matrix A = random_matrix(rng, m, n);
        if (i % 3 == 1 && std::min(m, n) > 1)
            A.col(0) = A.col(std::min(m, n) - 1);  // force near-deficiency
        SvdResult dec = svd(A);
        Matrix G = (m <= n) ? Matrix(A * A.transpose()) : Matrix(A.transpose() * A);
        Vector ev = jacobi_eigenvalues(G);
        const double scale = std::max(dec.s.size() ? dec.s(0) : 0.0, 1e-30);
        // the squared route halves precision near zero: certify values above
        // a floor, and below it only demand the oracle agrees they are tiny
        const double floor_ = 1e-6 * scale;
        for (Index j = 0; j < dec.s.size(); ++j) {
            const double oracle = std::sqrt(std::max(0.0, ev(j)));
            if (dec.s(j) > floor_ || oracle > 2.0 * floor_)
                worst = std::max(worst, std::abs(dec.s(j) - oracle) / scale);
        }
    }
    detail = "100 matrices, cyclic-Jacobi Gram route";
    return worst;
}

double chk_orthonormalize(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x0A7B0));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Index n = 2 + static_cast<Index>(rng.uniform_below(9));
        const Index p = 1 + static_cast<Index>(
                                rng.uniform_below(static_cast<std::uint64_t>(n)));
        Matrix A = random_matrix(rng, n, p);
        Matrix Q = orthonormalize(A);
        worst = std::max(worst,
                         (Q.transpose() * Q - Matrix::Identity(p, p)).norm());
        worst = std::max(worst, rel((Q * (Q.transpose() * A) - A).norm(), A.norm()));
        // idempotence on its own output
        worst = std::max(worst, (orthonormalize(Q) - Q).norm());
        // complement completes an orthogonal square
        Matrix C = orthonormal_complement(Q);
        Matrix full(n, n);
        full.leftCols(p) = Q;
        full.rightCols(n - p) = C;
        worst = std::max(worst, (full.transpose() * full -
                                 Matrix::Identity(n, n)).norm());
        // rank-deficient input must be rejected
        if (p >= 2) {
            Matrix Bad = A;
            Bad.col(p - 1) = Bad.col(0);
            try {
                orthonormalize(Bad);
                worst = kInf;
            } catch (const degenerate_input_error&) {
            }
        }
    }
    detail = "100 bases";
    return worst;
}

// --- transforms ----------------------------------------------------------------

double chk_transform_stiefel(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x57F1));
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 40; ++i) {
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(6));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(6));
        const Index n3 = 1 + static_cast<Index>(rng.uniform_below(8));
        Tensor3 A = random_tensor(rng, n1, n2, n3);
        for (Index p = 1; p <= n3; ++p) {
            for (int kind = 0; kind < 4; ++kind) {
                Transform T = kind_transform(kind, A, p, rng.next());
                worst = std::max(
                    worst, rel((T.Q.transpose() * T.Q -
                                Matrix::Identity(p, p)).norm(),
                               static_cast<double>(p)));
                Matrix C = complement_basis(T);
                Matrix proj = T.Q * T.Q.transpose() + C * C.transpose();
                worst = std::max(worst,
                                 rel((proj - Matrix::Identity(n3, n3)).norm(),
                                     static_cast<double>(n3)));
                ++cases;
            }
        }
        // determinism of the data-dependent basis
        Transform T1 = data_dependent_transform(A, std::min<Index>(n3, 2));
        Transform T2 = data_dependent_transform(A, std::min<Index>(n3, 2));
        if ((T1.Q - T2.Q).norm() != 0.0) worst = kInf;
    }
    // basis completion path: p beyond the unfolding's range
    {
        Xoshiro256pp rng2(derive_seed(seed, 0x57F2));
        Tensor3 A = random_tensor(rng2, 2, 1, 5);
        Transform T = data_dependent_transform(A, 4);
        if (!T.completed_basis) worst = kInf;
        worst = std::max(worst, rel((T.Q.transpose() * T.Q -
                                     Matrix::Identity(4, 4)).norm(), 4.0));
        if (data_dependent_transform(A, 2).completed_basis) worst = kInf;
    }
    // pinned small bases
    {
        Matrix H = haar_transform(4, 2).Q;
        const double s = std::sqrt(2.0);
        const double w[4][2] = {{0.5, 0.5}, {0.5, 0.5},
                                {s / 2.0, -s / 2.0}, {0.0, 0.0}};
        for (Index r = 0; r < 4; ++r)
            for (Index c = 0; c < 2; ++c)
                worst = std::max(worst, std::abs(H(r, c) - w[r][c]));
        Matrix Dct = dct_transform(3, 1).Q;
        for (Index r = 0; r < 3; ++r)
            worst = std::max(worst, std::abs(Dct(r, 0) - 1.0 / std::sqrt(3.0)));
        Matrix D4 = dct_transform(4, 4).Q;
        worst = std::max(worst, (D4.transpose() * D4 -
                                 Matrix::Identity(4, 4)).norm());
    }
    detail = std::to_string(cases) + " transforms across kinds";
    return worst;
}

double chk_projection_tail(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 100; ++i) {
        Tensor3 A = suite_tensor(seed, i);
        const double nrm2 = frobenius_norm(A) * frobenius_norm(A);
        if (nrm2 == 0.0) continue;
        SvdResult dec = svd(mode3_unfold(A));
        Transform Tfull = data_dependent_transform(A, A.n3());
        for (Index p = 1; p <= A.n3(); ++p) {
            Transform Tp = custom_transform(Tfull.Q.leftCols(p));
            const double proj = projection_error(A, Tp);
            double tail = 0.0;
            for (Index j = p; j < dec.s.size(); ++j) tail += dec.s(j) * dec.s(j);
            worst = std::max(worst, std::abs(proj * proj - tail) / nrm2);
            // Pythagoras: projected energy + discarded energy = total
            const double kept =
                mode3_product(A, Matrix(Tp.Q.transpose())).tubes_view().squaredNorm();
            worst = std::max(worst, std::abs(kept + proj * proj - nrm2) / nrm2);
            ++cases;
        }
    }
    detail = std::to_string(cases) + " (instance, p) pairs";
    return worst;
}

double chk_projection_optimality(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 100; ++i) {
        Tensor3 A = suite_tensor(seed, i);
        const Index n3 = A.n3();
        Transform Tfull = data_dependent_transform(A, n3);
        std::vector<double> best(static_cast<std::size_t>(n3) + 1, 0.0);
        for (Index p = 1; p <= n3; ++p)
            best[static_cast<std::size_t>(p)] =
                projection_error(A, custom_transform(Tfull.Q.leftCols(p)));
        for (int w = 0; w < 50; ++w) {
            Transform W = random_orthogonal_transform(
                n3, n3, derive_seed(seed, 0x0957E000u + 64u * i + w));
            for (Index p = 1; p <= n3; ++p) {
                const double sample =
                    projection_error(A, custom_transform(W.Q.leftCols(p)));
                worst = std::max(worst, best[static_cast<std::size_t>(p)] - sample);
                ++cases;
            }
        }
    }
    detail = std::to_string(cases) + " Stiefel samples";
    return worst;
}

// --- star products -------------------------------------------------------------

double chk_star_m_entrywise(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x3A6E));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index m = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(4));
        Tensor3 A = random_tensor(rng, n1, m, n3);
        Tensor3 B = random_tensor(rng, m, n2, n3);
        // random orthogonal times a diagonal: invertible, far from orthogonal
        Matrix W = random_orthogonal_transform(n3, n3, rng.next()).Q;
        Vector dscale(n3);
        for (Index j = 0; j < n3; ++j) dscale(j) = 1.0 + static_cast<double>(j);
        Matrix M = W * dscale.asDiagonal();
        Tensor3 C = star_m_product(A, B, M);
        Eigen::PartialPivLU<Matrix> lu(M);
        double scale = frobenius_norm(C);
        for (Index jj = 0; jj < n2; ++jj)
            for (Index ii = 0; ii < n1; ++ii) {
                Vector want = Vector::Zero(n3);
                for (Index l = 0; l < m; ++l)
                    want += tube_star_m(tube(A, ii, l), tube(B, l, jj), M, lu);
                worst = std::max(worst, rel((tube(C, ii, jj) - want).norm(), scale));
            }
        // M = I reduces to tube-wise entrywise products
        Tensor3 CI = star_m_product(A, B, Matrix::Identity(n3, n3));
        for (Index jj = 0; jj < n2; ++jj)
            for (Index ii = 0; ii < n1; ++ii) {
                Vector want = Vector::Zero(n3);
                for (Index l = 0; l < m; ++l)
                    want += (tube(A, ii, l).array() * tube(B, l, jj).array()).matrix();
                worst = std::max(worst, rel((tube(CI, ii, jj) - want).norm(),
                                            frobenius_norm(CI)));
            }
    }
    detail = "20 instances, tube-summation oracle";
    return worst;
}

double chk_star_q_algebra(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 200; ++i) {
        Xoshiro256pp rng(derive_seed(seed, 0xA16EB8A0u + static_cast<unsigned>(i)));
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(5));
        const Index m = 1 + static_cast<Index>(rng.uniform_below(5));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(5));
        const Index q = 1 + static_cast<Index>(rng.uniform_below(4));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(5));
        const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
        Tensor3 A = random_tensor(rng, n1, m, n3);
        Tensor3 B = random_tensor(rng, m, n2, n3);
        Tensor3 B2 = random_tensor(rng, m, n2, n3);
        Tensor3 C = random_tensor(rng, n2, q, n3);
        int kind = i % 5;
        Transform T = (kind == 4 && (n3 == 2 || n3 == 4))
                          ? haar_transform(n3, p)
                          : kind_transform(kind, A, p, rng.next());
        StarContext ctx = StarContext::with_complement(T);
        const Matrix& Qp = *ctx.complement;

        // tube commutativity
        Tensor3 t1 = random_tensor(rng, 1, 1, n3), t2 = random_tensor(rng, 1, 1, n3);
        worst = std::max(worst, rel(frobenius_norm(star_q_product(t1, t2, ctx) -
                                                   star_q_product(t2, t1, ctx)),
                                    frobenius_norm(star_q_product(t1, t2, ctx))));

        // associativity and distributivity
        Tensor3 ab_c = star_q_product(star_q_product(A, B, ctx), C, ctx);
        Tensor3 a_bc = star_q_product(A, star_q_product(B, C, ctx), ctx);
        worst = std::max(worst, rel(frobenius_norm(ab_c - a_bc), frobenius_norm(ab_c)));
        Tensor3 lhs = star_q_product(A, B + B2, ctx);
        Tensor3 rhs = star_q_product(A, B, ctx) + star_q_product(A, B2, ctx);
        worst = std::max(worst, rel(frobenius_norm(lhs - rhs), frobenius_norm(rhs)));

        // transpose reversal
        Tensor3 tl = star_q_transpose(star_q_product(A, B, ctx), ctx);
        Tensor3 tr = star_q_product(star_q_transpose(B, ctx),
                                    star_q_transpose(A, ctx), ctx);
        worst = std::max(worst, rel(frobenius_norm(tl - tr), frobenius_norm(tr)));

        // identity from both sides
        Tensor3 IL = star_q_identity(n1, ctx);
        Tensor3 IR = star_q_identity(m, ctx);
        Tensor3 PA = mode3_product(A, T.Q * T.Q.transpose());
        worst = std::max(worst, rel(frobenius_norm(star_q_product(IL, A, ctx) - PA),
                                    frobenius_norm(PA)));
        worst = std::max(worst, rel(frobenius_norm(star_q_product(A, IR, ctx) - PA),
                                    frobenius_norm(PA)));

        // identityNull: adding any complement-band junk to I changes nothing
        if (Qp.cols() > 0) {
            Tensor3 E = random_tensor(rng, n1, n1, n3);
            Matrix coP = Matrix::Identity(n3, n3) - T.Q * T.Q.transpose();
            Tensor3 J = IL + mode3_product(E, coP);
            worst = std::max(worst,
                             rel(frobenius_norm(star_q_product(J, A, ctx) - PA),
                                 frobenius_norm(PA)));
            // non-injectivity: complement-band perturbations are invisible
            Tensor3 E2 = random_tensor(rng, n1, m, n3);
            Tensor3 Ax = A + mode3_product(E2, coP);
            if (frobenius_norm(Ax - A) == 0.0) worst = kInf;
            worst = std::max(
                worst, rel(frobenius_norm(star_q_product(Ax, B, ctx) -
                                          star_q_product(A, B, ctx)),
                           frobenius_norm(star_q_product(A, B, ctx))));
        }

        // projection form: both factors may be pre-projected and pushed
        // through the full partitioned star-M product
        Matrix M(n3, n3);
        M.topRows(p) = T.Q.transpose();
        M.bottomRows(n3 - p) = Qp.transpose();
        Tensor3 pr = star_m_product(mode3_product(A, T.Q * T.Q.transpose()),
                                    mode3_product(B, T.Q * T.Q.transpose()), M);
        Tensor3 sq = star_q_product(A, B, ctx);
        worst = std::max(worst, rel(frobenius_norm(pr - sq), frobenius_norm(sq)));

        // split identity and annihilation residuals
        Tensor3 full = star_m_product(A, B, M);
        worst = std::max(worst, rel(split_identity_check(A, B, ctx),
                                    frobenius_norm(full)));
        worst = std::max(worst, rel(transform_annihilation_check(A, B, ctx),
                                    frobenius_norm(sq)));

        // transform-domain slices of the product match the facewise product
        Tensor3 hat = mode3_product(sq, Matrix(T.Q.transpose()));
        Tensor3 fw = facewise_product(mode3_product(A, Matrix(T.Q.transpose())),
                                      mode3_product(B, Matrix(T.Q.transpose())));
        worst = std::max(worst, rel(frobenius_norm(hat - fw), frobenius_norm(fw)));

        // unitarity of projected-SVD factors (square left factor)
        if (n1 <= m) {
            TsvdqFactors F = tsvdq(A, T, n1);
            Tensor3 Uhat(n1, n1, p);
            for (Index s = 0; s < p; ++s)
                Uhat.slice(s) = F.Uhat[static_cast<std::size_t>(s)];
            Tensor3 U = mode3_product(Uhat, T.Q);
            if (!is_star_q_unitary(U, ctx, 1e-8)) worst = kInf;
        }

        // f-diagonality: diagonal transform-domain tubes, then a spoiled copy
        if (n1 > 1 && m > 1) {
            Tensor3 Dhat(n1, m, p);
            for (Index s = 0; s < p; ++s)
                for (Index dd = 0; dd < std::min(n1, m); ++dd)
                    Dhat.slice(s)(dd, dd) = rng.normal();
            Tensor3 Dt = mode3_product(Dhat, T.Q);
            if (!is_f_diagonal(Dt, 1e-10)) worst = kInf;
            Dhat.slice(0)(0, 1) = 5.0;
            if (is_f_diagonal(mode3_product(Dhat, T.Q), 1e-10)) worst = kInf;
        }
        ++cases;
    }
    detail = std::to_string(cases) + " instances across 5 kinds";
    return worst;
}

// --- decompositions --------------------------------------------------------------

double chk_eckart_young_identity(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 100; ++i) {
        Tensor3 A = suite_tensor(seed, i);
        const double nrm2 = frobenius_norm(A) * frobenius_norm(A);
        if (nrm2 == 0.0) continue;
        for (int kind = 0; kind < 4; ++kind) {
            for (Index p = 1; p <= A.n3(); ++p) {
                Transform T = kind_transform(kind, A, p,
                                             derive_seed(seed, 0xE70000u + i));
                for (Index k = 1; k <= std::min(A.n1(), A.n2()); ++k) {
                    ApproxError e = tsvdq_error(A, tsvdq(A, T, k));
                    const double lhs = e.total * e.total;
                    const double rhs = e.eckart_young * e.eckart_young +
                                       e.projection * e.projection;
                    worst = std::max(worst, std::abs(lhs - rhs) / nrm2);
                    ++cases;
                }
            }
        }
    }
    detail = std::to_string(cases) + " (tensor, kind, k, p) cases";
    return worst;
}

double chk_eckart_young_optimality(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 20; ++i) {
        Xoshiro256pp rng(derive_seed(seed, 0xE10000u + static_cast<unsigned>(i)));
        const Index n1 = 2 + static_cast<Index>(rng.uniform_below(6));
        const Index n2 = 2 + static_cast<Index>(rng.uniform_below(6));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(5));
        const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
        const Index k = 1 + static_cast<Index>(rng.uniform_below(
                                static_cast<std::uint64_t>(std::min(n1, n2))));
        Tensor3 A = random_tensor(rng, n1, n2, n3);
        Transform T = kind_transform(static_cast<int>(i), A, p, rng.next());
        StarContext ctx(T);
        const double best =
            frobenius_norm(A - tsvdq_reconstruct(tsvdq(A, T, k)));
        for (int c = 0; c < 20; ++c) {
            Tensor3 X = random_tensor(rng, n1, k, n3);
            Tensor3 Y = random_tensor(rng, n2, k, n3);
            Tensor3 C = star_q_product(X, star_q_transpose(Y, ctx), ctx);
            worst = std::max(worst, best - frobenius_norm(A - C));
            ++cases;
        }
    }
    detail = std::to_string(cases) + " rank-k product competitors";
    return worst;
}

double chk_hosvd_dominance(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 20; ++i) {
        Xoshiro256pp rng(derive_seed(seed, 0x405D00u + static_cast<unsigned>(i)));
        const Index n1 = 2 + static_cast<Index>(rng.uniform_below(7));
        const Index n2 = 2 + static_cast<Index>(rng.uniform_below(6));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(5));
        Tensor3 A = random_tensor(rng, n1, n2, n3);
        Transform Tfull = data_dependent_transform(A, n3);
        // memoized projected-SVD errors per (k, p)
        std::vector<std::vector<double>> err_q(
            static_cast<std::size_t>(std::min(n1, n2)) + 1,
            std::vector<double>(static_cast<std::size_t>(n3) + 1, -1.0));
        for (Index p = 1; p <= n3; ++p) {
            Transform Tp = custom_transform(Tfull.Q.leftCols(p));
            for (Index k1 = 1; k1 <= n1; ++k1)
                for (Index k2 = 1; k2 <= n2; ++k2) {
                    const Index k = std::min(k1, k2);
                    double& eq = err_q[static_cast<std::size_t>(k)]
                                      [static_cast<std::size_t>(p)];
                    if (eq < 0.0)
                        eq = tsvdq_error(A, tsvdq(A, Tp, k)).total;
                    HosvdFactors H = hosvd(A, k1, k2, p);
                    const double eh = frobenius_norm(A - hosvd_reconstruct(H));
                    worst = std::max(worst, eq - eh);
                    ++cases;
                }
        }
    }
    detail = std::to_string(cases) + " grid points";
    return worst;
}

double chk_svdii_dominance(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 50; ++i) {
        Xoshiro256pp rng(derive_seed(seed, 0x2DD000u + static_cast<unsigned>(i)));
        const Index n1 = 2 + static_cast<Index>(rng.uniform_below(7));
        const Index n2 = 2 + static_cast<Index>(rng.uniform_below(6));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(5));
        Tensor3 A = random_tensor(rng, n1, n2, n3);
        for (int kind = 0; kind < 4; ++kind) {
            const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
            const Index k = 1 + static_cast<Index>(rng.uniform_below(
                                    static_cast<std::uint64_t>(std::min(n1, n2))));
            Transform T = kind_transform(kind, A, p, rng.next());
            TsvdqFactors F = tsvdq(A, T, k);
            ApproxError es = tsvdq_error(A, F);
            const double ahat2 =
                mode3_product(A, Matrix(T.Q.transpose())).tubes_view().squaredNorm();
            if (ahat2 == 0.0) continue;
            // the theorem's energy fraction captured by the rank-k factors
            double gamma =
                (ahat2 - es.eckart_young * es.eckart_young) / ahat2;
            gamma = std::min(1.0, std::max(gamma, 1e-300));
            // the threshold lands on an exact kept-energy tie (>= admits
            // equality); nudge below it so rounding cannot overshoot by one
            if (gamma < 1.0) gamma *= 1.0 - 1e-12;
            TsvdqIIFactors F2 = tsvdq2(A, T, gamma);
            ApproxError e2 = tsvdq2_error(A, F2);
            worst = std::max(worst, e2.total - es.total);
            if (F2.implicit_rank() > k * p) worst = kInf;
            ++cases;
        }
        // gamma = 1 keeps exactly the numerical slice ranks
        {
            Transform T = data_dependent_transform(A, std::max<Index>(1, n3 - 1));
            TsvdqIIFactors F2 = tsvdq2(A, T, 1.0);
            Tensor3 Ahat = mode3_product(A, Matrix(T.Q.transpose()));
            for (Index s = 0; s < T.p(); ++s) {
                SvdResult dec = svd(Ahat.slice(s));
                if (F2.multirank[static_cast<std::size_t>(s)] !=
                    numerical_rank(dec.s))
                    worst = kInf;
            }
        }
        // exact-rank input at gamma = 1: multirank (r,...,r), reconstruction
        // coincides with the rank-r projected SVD
        {
            const Index r = 1 + static_cast<Index>(rng.uniform_below(
                                    static_cast<std::uint64_t>(std::min(n1, n2))));
            const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
            Transform T = random_orthogonal_transform(n3, p, rng.next());
            ExactRankSpec spec{n1, n2, n3, r, rng.next()};
            Tensor3 X = gen_exact_rank(spec, T);
            TsvdqIIFactors F2 = tsvdq2(X, T, 1.0);
            for (Index s = 0; s < p; ++s)
                if (F2.multirank[static_cast<std::size_t>(s)] != r) worst = kInf;
            Tensor3 d = tsvdq2_reconstruct(F2) - tsvdq_reconstruct(tsvdq(X, T, r));
            worst = std::max(worst, rel(frobenius_norm(d), frobenius_norm(X)));
        }
    }
    detail = std::to_string(cases) + " dominance cases + structure";
    return worst;
}

double chk_rank_and_recovery(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 40; ++i) {
        Xoshiro256pp rng(derive_seed(seed, 0x4EC000u + static_cast<unsigned>(i)));
        const Index n1 = 2 + static_cast<Index>(rng.uniform_below(6));
        const Index n2 = 2 + static_cast<Index>(rng.uniform_below(6));
        const Index n3 = 2 + static_cast<Index>(rng.uniform_below(5));
        const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
        const Index r = 1 + static_cast<Index>(rng.uniform_below(
                                static_cast<std::uint64_t>(std::min(n1, n2))));
        Tensor3 A = random_tensor(rng, n1, n2, n3);

        // exact projected-rank construction: rank, projection error, recovery
        Transform T = kind_transform(static_cast<int>(i % 4), A, p, rng.next());
        ExactRankSpec spec{n1, n2, n3, r, rng.next()};
        Tensor3 X = gen_exact_rank(spec, T);
        const double xn = frobenius_norm(X);
        if (star_q_rank(X, T) > r) worst = kInf;
        worst = std::max(worst, rel(projection_error(X, T), xn));
        Tensor3 Xr = tsvdq_reconstruct(tsvdq(X, T, r));
        worst = std::max(worst, rel(frobenius_norm(X - Xr), xn));

        // prefix widths never increase the projected rank
        Transform W = random_orthogonal_transform(n3, n3, rng.next());
        Transform Wp = custom_transform(W.Q.leftCols(p));
        if (star_q_rank(X, Wp) > star_q_rank(X, W)) worst = kInf;

        // exhaustive truncation at p = n3 reproduces A; at p < n3 it
        // reproduces the projection of A
        Transform Tf = kind_transform(static_cast<int>((i + 1) % 4), A, n3,
                                      rng.next());
        Tensor3 R = tsvdq_reconstruct(tsvdq(A, Tf, std::min(n1, n2)));
        worst = std::max(worst, rel(frobenius_norm(A - R), frobenius_norm(A)));
        Tensor3 Rp = tsvdq_reconstruct(tsvdq(A, T, std::min(n1, n2)));
        Tensor3 PA = mode3_product(A, Matrix(T.Q * T.Q.transpose()));
        worst = std::max(worst, rel(frobenius_norm(PA - Rp), frobenius_norm(A)));
        ++cases;
    }
    detail = std::to_string(cases) + " constructions";
    return worst;
}

double chk_matrix_baseline(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0xBA5E));
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(6));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(6));
        const Index n3 = 1 + static_cast<Index>(rng.uniform_below(5));
        Tensor3 A = random_tensor(rng, n1, n2, n3);
        const Index cap = std::min(n1 * n3, n2);
        const Index k = 1 + static_cast<Index>(
                                rng.uniform_below(static_cast<std::uint64_t>(cap)));
        MatrixSvdBaseline mb = matrix_svd_baseline(A, k);
        // stacking layout: row i + s*n1 of the flattening is A(i,:,s)
        Matrix B(n1 * n3, n2);
        for (Index s = 0; s < n3; ++s)
            for (Index j = 0; j < n2; ++j)
                for (Index ii = 0; ii < n1; ++ii) B(ii + s * n1, j) = A(ii, j, s);
        SvdResult full = svd(B);
        double tail = 0.0;
        for (Index j = k; j < full.s.size(); ++j) tail += full.s(j) * full.s(j);
        worst = std::max(worst, rel(std::abs(mb.error * mb.error - tail),
                                    B.squaredNorm()));
        // full truncation reproduces the flattening
        MatrixSvdBaseline mfull = matrix_svd_baseline(A, cap);
        worst = std::max(worst, rel(mfull.error, B.norm()));
    }
    detail = "40 flattenings";
    return worst;
}

double chk_hosvd_matched_storage(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x4057));
    double violations = 0.0;
    // pinned closed-form cases
    if (hosvd_matched_truncation(8, 9, 5, 2, 3, HosvdVariant::Full) != Index{1})
        violations += 1.0;
    if (hosvd_matched_truncation(8, 9, 5, 2, 3, HosvdVariant::Square) != Index{3})
        violations += 1.0;
    if (hosvd_matched_truncation(50, 4, 5, 1, 1, HosvdVariant::Full)
            .has_value())
        violations += 1.0;
    for (int i = 0; i < 200; ++i) {
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(40));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(40));
        const Index n3 = 1 + static_cast<Index>(rng.uniform_below(40));
        const Index k = 1 + static_cast<Index>(rng.uniform_below(
                                static_cast<std::uint64_t>(std::min(n1, n2))));
        const Index p = 1 + static_cast<Index>(rng.uniform_below(n3));
        const auto budget =
            storage_tsvdq(n1, n2, n3, k, p, TransformKind::Dct).total();
        for (HosvdVariant v : {HosvdVariant::Full, HosvdVariant::Square}) {
            const auto st = [&](Index k2) {
                return v == HosvdVariant::Full
                           ? storage_hosvd(n1, n2, n3, n1, k2, p).total()
                           : storage_hosvd(n1, n2, n3, k2, k2, p).total();
            };
            const Index cap = v == HosvdVariant::Full ? n2 : std::min(n1, n2);
            auto k2 = hosvd_matched_truncation(n1, n2, n3, k, p, v);
            if (k2) {
                if (*k2 < 1 || *k2 > cap || st(*k2) > budget) violations += 1.0;
                if (*k2 + 1 <= cap && st(*k2 + 1) <= budget) violations += 1.0;
            } else if (st(1) <= budget) {
                violations += 1.0;
            }
        }
    }
    detail = "2 variants x 200 budgets + pinned cases";
    return violations;
}

double chk_storage_formulas(std::uint64_t seed, std::string& detail) {
    Xoshiro256pp rng(derive_seed(seed, 0x570A));
    double violations = 0.0;
    if (CompressionReport::csv_header() !=
        "method,transform,k,p,gamma,kappa,re,st_factors,st_transform,cr")
        violations += 1.0;
    for (int i = 0; i < 100; ++i) {
        const auto draw = [&](std::uint64_t cap) {
            return static_cast<Index>(1 + rng.uniform_below(cap));
        };
        const Index n1 = draw(30), n2 = draw(30), n3 = draw(30);
        const Index k = std::min({draw(10), n1, n2});
        const Index p = std::min(draw(10), n3);
        const Index kappa = draw(50);
        const auto st1 = storage_tsvdq(n1, n2, n3, k, p, TransformKind::Dct);
        if (st1.factors != static_cast<std::uint64_t>(n1 * k * p + k * n2 * p) ||
            st1.transform != static_cast<std::uint64_t>(n3 * p))
            violations += 1.0;
        if (storage_tsvdq(n1, n2, n3, k, p, TransformKind::Identity).transform != 0)
            violations += 1.0;
        const auto st2 = storage_tsvdq2(n1, n2, n3, kappa, p, TransformKind::Haar);
        if (st2.factors != static_cast<std::uint64_t>(kappa * (n1 + n2)))
            violations += 1.0;
        // a uniform multirank (k,...,k) collapses to the plain factor count
        if (storage_tsvdq2(n1, n2, n3, k * p, p, TransformKind::Dct).factors !=
            st1.factors)
            violations += 1.0;
        const auto sth = storage_hosvd(n1, n2, n3, k, std::min(k, n2), p);
        if (sth.total() != static_cast<std::uint64_t>(
                               k * std::min(k, n2) * p + n1 * k +
                               n2 * std::min(k, n2) + n3 * p))
            violations += 1.0;
        const auto stm = storage_matrix_svd(n1, n2, n3, k);
        if (stm.factors != static_cast<std::uint64_t>(n1 * n3 * k + k * n2))
            violations += 1.0;
        const double cr = compression_ratio(n1, n2, n3, st1);
        const double want = static_cast<double>(n1 * n2 * n3) /
                            static_cast<double>(st1.total());
        if (cr != want) violations += 1.0;
    }
    detail = "formula identities on 100 draws";
    return violations;
}

// --- io / generators ------------------------------------------------------------

double chk_pt3_roundtrip(std::uint64_t seed, std::string& detail) {
    namespace fs = std::filesystem;
    Xoshiro256pp rng(derive_seed(seed, 0x9735));
    const fs::path dir =
        fs::temp_directory_path() /
        ("projprod-verify-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    double violations = 0.0;
    const fs::path file = dir / "t.pt3";
    for (int i = 0; i < 1000; ++i) {
        const Index n1 = 1 + static_cast<Index>(rng.uniform_below(16));
        const Index n2 = 1 + static_cast<Index>(rng.uniform_below(16));
        const Index n3 = 1 + static_cast<Index>(rng.uniform_below(16));
        Tensor3 A = random_tensor(rng, n1, n2, n3);
        write_pt3(file, A);
        Tensor3 B = read_pt3(file);
        if (!A.same_shape(B) ||
            std::memcmp(A.data(), B.data(),
                        sizeof(double) * static_cast<std::size_t>(A.size())) != 0)
            violations += 1.0;
    }
    // matrix container round trip
    {
        Matrix M = random_matrix(rng, 5, 3);
        write_pt3_matrix(dir / "m.pt3", M);
        if ((read_pt3_matrix(dir / "m.pt3") - M).norm() != 0.0) violations += 1.0;
    }
    // malformed inputs must be rejected with a format error
    const auto expect_reject = [&](const std::vector<unsigned char>& bytes) {
        const fs::path badfile = dir / "bad.pt3";
        std::FILE* f = std::fopen(badfile.c_str(), "wb");
        if (bytes.size())
            std::fwrite(bytes.data(), 1, bytes.size(), f);
        std::fclose(f);
        try {
            read_pt3(badfile);
            violations += 1.0;
        } catch (const format_error&) {
        }
    };
    {
        Tensor3 A = random_tensor(rng, 2, 2, 2);
        write_pt3(file, A);
        std::ifstream in(file, std::ios::binary);
        std::vector<unsigned char> good(
            (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        std::vector<unsigned char> bad = good;
        bad[0] = 'X';  // magic
        expect_reject(bad);
        bad = good;
        bad[4] = 9;  // version
        expect_reject(bad);
        bad = good;
        bad[8] = 7;  // dtype
        expect_reject(bad);
        bad = good;
        bad.pop_back();  // truncated payload
        expect_reject(bad);
        bad = good;
        bad.push_back(0);  // trailing byte
        expect_reject(bad);
        bad = good;
        for (int b = 0; b < 8; ++b) bad[12 + b] = 0;  // zero extent
        expect_reject(bad);
        bad = good;
        for (int b = 0; b < 8; ++b) bad[12 + b] = 0xff;  // overflowing extents
        expect_reject(bad);
        expect_reject({});  // empty file
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    detail = "1000 round trips + 8 rejection paths";
    return violations;
}

double chk_generator_contracts(std::uint64_t seed, std::string& detail) {
    double worst = 0.0;  // normalized: defect / allowed bound
    // moving square
    {
        MovingSquareSpec ms{12, 10, 9, 3, 1, -2, seed};
        Tensor3 A = gen_moving_square(ms);
        Tensor3 B = gen_moving_square(ms);
        if (std::memcmp(A.data(), B.data(),
                        sizeof(double) * static_cast<std::size_t>(A.size())) != 0)
            worst = kInf;
        for (Index f = 0; f < A.n3(); ++f) {
            int bright = 0;
            for (Index j = 0; j < A.n2(); ++j)
                for (Index i = 0; i < A.n1(); ++i) {
                    const double v = A(i, j, f);
                    if (v != 0.2 && v != 1.0) worst = kInf;
                    if (v == 1.0) ++bright;
                }
            if (bright != 9) worst = kInf;
        }
        MovingSquareSpec still{6, 7, 8, 2, 0, 0, seed + 1};
        SvdResult dec = svd(mode3_unfold(gen_moving_square(still)));
        worst = std::max(worst, (dec.s(1) / dec.s(0)) / 1e-10);
    }
    // spectral cube
    {
        for (Index s : {Index{2}, Index{3}}) {
            SpectralCubeSpec sc{14, 13, 20, s, seed + static_cast<std::uint64_t>(s)};
            Tensor3 A = gen_spectral_cube(sc);
            Tensor3 B = gen_spectral_cube(sc);
            if (std::memcmp(A.data(), B.data(),
                            sizeof(double) *
                                static_cast<std::size_t>(A.size())) != 0)
                worst = kInf;
            for (Index i = 0; i < A.size(); ++i)
                if (A.data()[i] < 0.0) worst = kInf;
            SvdResult dec = svd(mode3_unfold(A));
            worst = std::max(worst, (dec.s(s) / dec.s(0)) / 1e-10);
            Transform T = data_dependent_transform(A, s);
            worst = std::max(worst,
                             rel(projection_error(A, T), frobenius_norm(A)) / 1e-9);
        }
    }
    // exact rank determinism
    {
        Transform T = dct_transform(7, 4);
        ExactRankSpec er{5, 6, 7, 2, seed + 9};
        Tensor3 A = gen_exact_rank(er, T);
        Tensor3 B = gen_exact_rank(er, T);
        if (std::memcmp(A.data(), B.data(),
                        sizeof(double) * static_cast<std::size_t>(A.size())) != 0)
            worst = kInf;
    }
    detail = "determinism, value sets, rank structure (normalized)";
    return worst;
}

double chk_spectral_trend(std::uint64_t seed, std::string& detail) {
    SpectralCubeSpec sc{32, 32, 48, 3, seed};
    Tensor3 A = gen_spectral_cube(sc);
    const Index k = 5;
    Transform Tfull = data_dependent_transform(A, A.n3());
    const double re_full =
        relative_error(A, tsvdq_reconstruct(tsvdq(A, Tfull, k)));

    const Index pmax = static_cast<Index>(0.2 * static_cast<double>(A.n3()));
    Index pstar = -1;
    double re_dd = 0.0;
    for (Index p = 1; p <= pmax; ++p) {
        Transform Tp = custom_transform(Tfull.Q.leftCols(p));
        re_dd = relative_error(A, tsvdq_reconstruct(tsvdq(A, Tp, k)));
        if (re_dd <= 1.01 * re_full + 1e-12) {
            pstar = p;
            break;
        }
    }
    if (pstar < 0) {
        detail = "data-dependent transform never reached 1% of its full-p error "
                 "within p <= " + std::to_string(pmax);
        return kInf;
    }
    Transform Tid = identity_transform(A.n3(), pstar);
    const double re_id = relative_error(A, tsvdq_reconstruct(tsvdq(A, Tid, k)));
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "p*=%lld (cap %lld), re_dd=%.3g, re_full=%.3g, re_id=%.3g",
                  static_cast<long long>(pstar), static_cast<long long>(pmax),
                  re_dd, re_full, re_id);
    detail = buf;
    return std::max(0.0, 2.0 * re_dd - re_id);  // need re_id >= 2*re_dd
}

// --- registry ---------------------------------------------------------------

struct CheckSpec {
    const char* name;
    double tolerance;
    double (*body)(std::uint64_t, std::string&);
};

const CheckSpec kChecks[] = {
    {"appendix-a", 1e-12, chk_appendix_a},
    {"counterexample", 1e-12, chk_counterexample},
    {"scale-law", 1e-10, chk_scale_law},
    {"tensor-roundtrips", 1e-12, chk_tensor_roundtrips},
    {"svd-contract", 1e-10, chk_svd_contract},
    {"svd-gram-oracle", 1e-9, chk_svd_gram_oracle},
    {"orthonormalize-contract", 1e-10, chk_orthonormalize},
    {"transform-stiefel", 1e-10, chk_transform_stiefel},
    {"projection-tail", 1e-9, chk_projection_tail},
    {"projection-optimality", 1e-12, chk_projection_optimality},
    {"star-m-entrywise", 1e-12, chk_star_m_entrywise},
    {"star-q-algebra", 1e-10, chk_star_q_algebra},
    {"eckart-young-identity", 1e-10, chk_eckart_young_identity},
    {"eckart-young-optimality", 1e-10, chk_eckart_young_optimality},
    {"hosvd-dominance", 1e-12, chk_hosvd_dominance},
    {"svdii-dominance", 1e-12, chk_svdii_dominance},
    {"rank-and-recovery", 1e-9, chk_rank_and_recovery},
    {"matrix-baseline", 1e-9, chk_matrix_baseline},
    {"hosvd-matched-storage", 0.0, chk_hosvd_matched_storage},
    {"storage-formulas", 0.0, chk_storage_formulas},
    {"pt3-roundtrip", 0.0, chk_pt3_roundtrip},
    {"generator-contracts", 1.0, chk_generator_contracts},
    {"spectral-trend", 0.0, chk_spectral_trend},
};

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& c : kChecks) names.emplace_back(c.name);
    return names;
}

std::vector<CheckResult> run_checks(const Options& opts) {
    std::vector<CheckResult> results;
    for (const auto& spec : kChecks) {
        if (!opts.only.empty() &&
            std::string(spec.name).find(opts.only) == std::string::npos)
            continue;
        CheckResult r;
        r.name = spec.name;
        r.tolerance = spec.tolerance;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.residual = spec.body(opts.seed, r.detail);
            r.passed = r.residual <= r.tolerance;
        } catch (const std::exception& e) {
            r.residual = kInf;
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        r.millis =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace projprod::verify
