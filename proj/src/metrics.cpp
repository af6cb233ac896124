#include "projprod/metrics.hpp"

#include <cstdio>

#include "projprod/errors.hpp"

namespace projprod {

namespace {

std::uint64_t u64(Index v) { return static_cast<std::uint64_t>(v); }

// Transform overhead: the basis matrix Q (n3 x p), except for the identity
// whose columns are implicit.
std::uint64_t transform_cost(Index n3, Index p, TransformKind kind) {
    return kind == TransformKind::Identity ? 0 : u64(n3) * u64(p);
}

}  // namespace

double relative_error(const Tensor3& A, const Tensor3& Ahat) {
    if (!A.same_shape(Ahat))
        throw shape_error("relative_error: shapes differ");
    const double ref = frobenius_norm(A);
    if (ref == 0.0)
        throw degenerate_input_error("relative_error: reference tensor is zero");
    return frobenius_norm(A - Ahat) / ref;
}

StorageCount storage_tsvdq(Index n1, Index n2, Index n3, Index k, Index p,
                           TransformKind kind) {
    if (k < 1 || p < 1)
        throw argument_error("storage_tsvdq: k and p must be positive");
    StorageCount st;
    // Per transform slice: U*diag (n1 x k) and V (n2 x k); the singular
    // values ride inside the left factor.
    st.factors = u64(n1) * u64(k) * u64(p) + u64(k) * u64(n2) * u64(p);
    st.transform = transform_cost(n3, p, kind);
    return st;
}

StorageCount storage_tsvdq2(Index n1, Index n2, Index n3, Index kappa, Index p,
                            TransformKind kind) {
    StorageCount st;
    st.factors = u64(kappa) * (u64(n1) + u64(n2));
    st.transform = transform_cost(n3, p, kind);
    return st;
}

StorageCount storage_hosvd(Index n1, Index n2, Index n3, Index k1, Index k2,
                           Index k3) {
    StorageCount st;
    st.factors = u64(k1) * u64(k2) * u64(k3) + u64(n1) * u64(k1) +
                 u64(n2) * u64(k2) + u64(n3) * u64(k3);
    st.transform = 0;  // U3 is counted with the factors
    return st;
}

StorageCount storage_matrix_svd(Index n1, Index n2, Index n3, Index k) {
    StorageCount st;
    st.factors = u64(n1) * u64(n3) * u64(k) + u64(k) * u64(n2);
    st.transform = 0;
    return st;
}

double compression_ratio(Index n1, Index n2, Index n3, const StorageCount& st) {
    if (st.total() == 0)
        throw argument_error("compression_ratio: empty representation");
    return static_cast<double>(u64(n1) * u64(n2) * u64(n3)) /
           static_cast<double>(st.total());
}

std::string CompressionReport::csv_header() {
    return "method,transform,k,p,gamma,kappa,re,st_factors,st_transform,cr";
}

std::string CompressionReport::csv_row() const {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "%s,%s,%lld,%lld,%.17g,%lld,%.17g,%llu,%llu,%.17g",
                  method.c_str(), transform.c_str(),
                  static_cast<long long>(k), static_cast<long long>(p), gamma,
                  static_cast<long long>(kappa), re,
                  static_cast<unsigned long long>(storage.factors),
                  static_cast<unsigned long long>(storage.transform), cr);
    return buf;
}

std::string transform_kind_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::Identity: return "identity";
        case TransformKind::RandomOrthogonal: return "random";
        case TransformKind::Dct: return "dct";
        case TransformKind::DataDependent: return "data";
        case TransformKind::Haar: return "haar";
        case TransformKind::Custom: return "custom";
    }
    return "unknown";
}

}  // namespace projprod
