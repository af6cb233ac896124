#include "projprod/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "projprod/errors.hpp"
#include "projprod/parallel.hpp"

namespace projprod {

namespace {

void check_transform_match(const Tensor3& A, const Transform& T, const char* who) {
    if (T.n3() != A.n3())
        throw shape_error(std::string(who) + ": transform length " +
                          std::to_string(T.n3()) + " != tensor n3 " +
                          std::to_string(A.n3()));
}

void check_spatial_rank(const Tensor3& A, Index k, const char* who) {
    const Index cap = std::min(A.n1(), A.n2());
    if (k < 1 || k > cap)
        throw argument_error(std::string(who) + ": k=" + std::to_string(k) +
                             " outside [1," + std::to_string(cap) + "]");
}

// Full SVDs of every transform-domain slice of A (slice-parallel).
std::vector<SvdResult> slice_svds(const Tensor3& Ahat) {
    std::vector<SvdResult> out(static_cast<std::size_t>(Ahat.n3()));
    parallel_for(Ahat.n3(), [&](Index i) {
        out[static_cast<std::size_t>(i)] = svd(Ahat.slice(i));
    });
    return out;
}

// Sum of squares of the values each slice SVD discards beyond the kept
// count; `kept` is either one k for all slices or a per-slice multirank.
double tail_energy(const std::vector<SvdResult>& svds,
                   const std::vector<Index>& kept) {
    double acc = 0.0;
    for (std::size_t i = 0; i < svds.size(); ++i) {
        const Vector& s = svds[i].s;
        for (Index j = kept[i]; j < s.size(); ++j) acc += s(j) * s(j);
    }
    return acc;
}

ApproxError assemble_error(const Tensor3& A, const Tensor3& recon,
                           const Transform& T, double ey_sq) {
    ApproxError e;
    e.total = frobenius_norm(A - recon);
    e.eckart_young = std::sqrt(ey_sq);
    e.projection = projection_error(A, T);
    return e;
}

}  // namespace

TsvdqFactors tsvdq(const Tensor3& A, const Transform& T, Index k) {
    check_transform_match(A, T, "tsvdq");
    check_spatial_rank(A, k, "tsvdq");
    Tensor3 Ahat = mode3_product(A, T.Q.transpose());
    TsvdqFactors F;
    F.transform = T;
    F.k = k;
    F.n1 = A.n1();
    F.n2 = A.n2();
    const Index p = T.p();
    F.Uhat.resize(static_cast<std::size_t>(p));
    F.shat.resize(static_cast<std::size_t>(p));
    F.Vhat.resize(static_cast<std::size_t>(p));
    parallel_for(p, [&](Index i) {
        SvdResult dec = svd(Ahat.slice(i));
        const auto ui = static_cast<std::size_t>(i);
        F.Uhat[ui] = dec.U.leftCols(k);
        F.shat[ui] = dec.s.head(k);
        F.Vhat[ui] = dec.V.leftCols(k);
    });
    return F;
}

Tensor3 tsvdq_reconstruct(const TsvdqFactors& F) {
    const Index p = F.transform.p();
    Tensor3 Chat(F.n1, F.n2, p);
    parallel_for(p, [&](Index i) {
        const auto ui = static_cast<std::size_t>(i);
        Chat.slice(i) =
            F.Uhat[ui] * F.shat[ui].asDiagonal() * F.Vhat[ui].transpose();
    });
    return mode3_product(Chat, F.transform.Q);
}

ApproxError tsvdq_error(const Tensor3& A, const TsvdqFactors& F) {
    check_transform_match(A, F.transform, "tsvdq_error");
    Tensor3 Ahat = mode3_product(A, F.transform.Q.transpose());
    std::vector<SvdResult> svds = slice_svds(Ahat);
    std::vector<Index> kept(svds.size(), F.k);
    return assemble_error(A, tsvdq_reconstruct(F), F.transform,
                          tail_energy(svds, kept));
}

Index star_q_rank(const Tensor3& A, const Transform& T, double tol_rel) {
    check_transform_match(A, T, "star_q_rank");
    Tensor3 Ahat = mode3_product(A, T.Q.transpose());
    Index rank = 0;
    for (Index i = 0; i < Ahat.n3(); ++i) {
        SvdResult dec = svd(Ahat.slice(i));
        rank = std::max(rank, numerical_rank(dec.s, tol_rel));
    }
    return rank;
}

Index TsvdqIIFactors::implicit_rank() const {
    return std::accumulate(multirank.begin(), multirank.end(), Index{0});
}

TsvdqIIFactors tsvdq2(const Tensor3& A, const Transform& T, double gamma) {
    check_transform_match(A, T, "tsvdq2");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw argument_error("tsvdq2: gamma must lie in (0,1], got " +
                             std::to_string(gamma));
    Tensor3 Ahat = mode3_product(A, T.Q.transpose());
    std::vector<SvdResult> svds = slice_svds(Ahat);
    const Index p = T.p();

    // Global pool of (value, slice, position); negligible values are zeroed
    // out of the pool entirely so they can never be selected.
    struct Entry {
        double value;
        Index slice;
        Index pos;
    };
    std::vector<Entry> pool;
    double global_max = 0.0;
    for (const auto& dec : svds)
        if (dec.s.size() > 0) global_max = std::max(global_max, dec.s(0));
    const double cutoff = kDefaultRankTol * global_max;
    for (Index i = 0; i < p; ++i) {
        const Vector& s = svds[static_cast<std::size_t>(i)].s;
        for (Index j = 0; j < s.size(); ++j)
            if (s(j) > cutoff) pool.push_back({s(j), i, j});
    }
    // Descending by value; ties resolved by slice index, then by position,
    // so the selection is a deterministic function of the spectrum.
    std::sort(pool.begin(), pool.end(), [](const Entry& a, const Entry& b) {
        return std::tie(b.value, a.slice, a.pos) < std::tie(a.value, b.slice, b.pos);
    });

    // Energy accumulated in sorted order; the same prefix sums decide K, so
    // gamma = 1 keeps the whole pool exactly.
    std::vector<double> cum(pool.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        acc += pool[i].value * pool[i].value;
        cum[i] = acc;
    }
    const double total = pool.empty() ? 0.0 : cum.back();
    std::size_t K = 0;
    if (total > 0.0) {
        const double want = gamma * total;
        while (K < pool.size() && cum[K] < want) ++K;
        ++K;  // count, not index
        K = std::min(K, pool.size());
    }

    TsvdqIIFactors F;
    F.gamma = gamma;
    F.transform = T;
    F.n1 = A.n1();
    F.n2 = A.n2();
    F.multirank.assign(static_cast<std::size_t>(p), 0);
    for (std::size_t i = 0; i < K; ++i)
        F.multirank[static_cast<std::size_t>(pool[i].slice)] += 1;

    F.Uhat.resize(static_cast<std::size_t>(p));
    F.shat.resize(static_cast<std::size_t>(p));
    F.Vhat.resize(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const Index rho = F.multirank[ui];
        const SvdResult& dec = svds[ui];
        F.Uhat[ui] = dec.U.leftCols(rho);
        F.shat[ui] = dec.s.head(rho);
        F.Vhat[ui] = dec.V.leftCols(rho);
    }
    return F;
}

Tensor3 tsvdq2_reconstruct(const TsvdqIIFactors& F) {
    const Index p = F.transform.p();
    Tensor3 Chat(F.n1, F.n2, p);
    parallel_for(p, [&](Index i) {
        const auto ui = static_cast<std::size_t>(i);
        Chat.slice(i) =
            F.Uhat[ui] * F.shat[ui].asDiagonal() * F.Vhat[ui].transpose();
    });
    return mode3_product(Chat, F.transform.Q);
}

ApproxError tsvdq2_error(const Tensor3& A, const TsvdqIIFactors& F) {
    check_transform_match(A, F.transform, "tsvdq2_error");
    Tensor3 Ahat = mode3_product(A, F.transform.Q.transpose());
    std::vector<SvdResult> svds = slice_svds(Ahat);
    return assemble_error(A, tsvdq2_reconstruct(F), F.transform,
                          tail_energy(svds, F.multirank));
}

namespace {

// Mode factor with ki orthonormal columns; pads with a basis completion when
// the unfolding offers fewer directions (possible when ki exceeds the
// product of the other two extents).
Matrix hosvd_factor(const Matrix& unfolding, Index ki) {
    const Index avail = std::min(unfolding.rows(), unfolding.cols());
    if (ki <= avail) return truncated_svd(unfolding, ki).U;
    SvdResult dec = svd(unfolding);
    Matrix comp = orthonormal_complement(dec.U);
    Matrix U(unfolding.rows(), ki);
    U.leftCols(avail) = dec.U;
    U.rightCols(ki - avail) = comp.leftCols(ki - avail);
    return U;
}

}  // namespace

HosvdFactors hosvd(const Tensor3& A, Index k1, Index k2, Index k3) {
    if (k1 < 1 || k1 > A.n1() || k2 < 1 || k2 > A.n2() || k3 < 1 || k3 > A.n3())
        throw argument_error("hosvd: multirank (" + std::to_string(k1) + "," +
                             std::to_string(k2) + "," + std::to_string(k3) +
                             ") outside the tensor extents");
    HosvdFactors F;
    F.U1 = hosvd_factor(mode_unfold(A, 1), k1);
    F.U2 = hosvd_factor(mode_unfold(A, 2), k2);
    F.U3 = hosvd_factor(mode_unfold(A, 3), k3);
    Tensor3 G = mode_product(A, F.U1.transpose(), 1);
    G = mode_product(G, F.U2.transpose(), 2);
    F.core = mode_product(G, F.U3.transpose(), 3);
    return F;
}

Tensor3 hosvd_reconstruct(const HosvdFactors& F) {
    Tensor3 A = mode_product(F.core, F.U1, 1);
    A = mode_product(A, F.U2, 2);
    return mode_product(A, F.U3, 3);
}

MatrixSvdBaseline matrix_svd_baseline(const Tensor3& A, Index k) {
    Matrix B(A.n1() * A.n3(), A.n2());
    for (Index s = 0; s < A.n3(); ++s)
        B.middleRows(s * A.n1(), A.n1()) = A.slice(s);
    const Index cap = std::min(B.rows(), B.cols());
    if (k < 1 || k > cap)
        throw argument_error("matrix_svd_baseline: k=" + std::to_string(k) +
                             " outside [1," + std::to_string(cap) + "]");
    MatrixSvdBaseline out;
    out.factors = truncated_svd(B, k);
    out.error = (B - out.factors.U * out.factors.s.asDiagonal() *
                         out.factors.V.transpose())
                    .norm();
    return out;
}

std::optional<Index> hosvd_matched_truncation(Index n1, Index n2, Index n3,
                                              Index k, Index p,
                                              HosvdVariant variant) {
    if (n1 < 1 || n2 < 1 || n3 < 1)
        throw argument_error("hosvd_matched_truncation: bad extents");
    if (k < 1 || k > std::min(n1, n2) || p < 1 || p > n3)
        throw argument_error("hosvd_matched_truncation: k or p out of range");

    // Budget: factor storage of the rank-k width-p projected SVD. The n3*p
    // transform term appears on both sides (U3 has k3 = p columns) and drops
    // out of the comparison.
    const double budget = static_cast<double>(k) * (n1 + n2) * p;
    const auto fits = [&](Index k2) {
        if (variant == HosvdVariant::Full)
            return static_cast<double>(n1) * k2 * p +
                       static_cast<double>(n1) * n1 +
                       static_cast<double>(n2) * k2 <=
                   budget;
        return static_cast<double>(k2) * k2 * p +
                   static_cast<double>(k2) * (n1 + n2) <=
               budget;
    };

    const Index cap = (variant == HosvdVariant::Full) ? n2 : std::min(n1, n2);
    Index k2;
    if (variant == HosvdVariant::Full) {
        const double num = budget - static_cast<double>(n1) * n1;
        const double den = static_cast<double>(n1) * p + n2;
        k2 = static_cast<Index>(std::floor(num / den));
    } else {
        const double sum = static_cast<double>(n1 + n2);
        const double disc =
            sum * sum + 4.0 * static_cast<double>(p) * p * k * sum;
        k2 = static_cast<Index>(
            std::floor((-sum + std::sqrt(disc)) / (2.0 * p)));
    }
    // The closed forms round through doubles; nudge onto the exact integer
    // boundary so the result is the true maximum.
    k2 = std::clamp<Index>(k2, 0, cap);
    while (k2 + 1 <= cap && fits(k2 + 1)) ++k2;
    while (k2 >= 1 && !fits(k2)) --k2;
    if (k2 < 1) return std::nullopt;
    return k2;
}

}  // namespace projprod
