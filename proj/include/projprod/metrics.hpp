#pragma once

#include <cstdint>
#include <string>

#include "projprod/tensor.hpp"
#include "projprod/transforms.hpp"

namespace projprod {

// Stored scalar counts for a compressed representation, split into the
// factor payload and the transform overhead (zero for the identity, whose
// basis needs no storage).
struct StorageCount {
    std::uint64_t factors = 0;
    std::uint64_t transform = 0;
    std::uint64_t total() const { return factors + transform; }
};

// ||A - Ahat||_F / ||A||_F; the reference tensor must be nonzero.
double relative_error(const Tensor3& A, const Tensor3& Ahat);

StorageCount storage_tsvdq(Index n1, Index n2, Index n3, Index k, Index p,
                           TransformKind kind);
StorageCount storage_tsvdq2(Index n1, Index n2, Index n3, Index kappa, Index p,
                            TransformKind kind);
StorageCount storage_hosvd(Index n1, Index n2, Index n3, Index k1, Index k2,
                           Index k3);
StorageCount storage_matrix_svd(Index n1, Index n2, Index n3, Index k);

// Dense-element count over stored-element count.
double compression_ratio(Index n1, Index n2, Index n3, const StorageCount& st);

// One sweep/compress measurement; serializes to the stable CSV schema
//   method,transform,k,p,gamma,kappa,re,st_factors,st_transform,cr
// Fields that do not apply to a method are written as zero. For hosvd rows
// the multirank (k1,k2,k3) is packed as (kappa,k,p).
struct CompressionReport {
    std::string method;
    std::string transform = "none";
    Index k = 0;
    Index p = 0;
    double gamma = 0.0;
    Index kappa = 0;
    double re = 0.0;
    StorageCount storage;
    double cr = 0.0;

    static std::string csv_header();
    std::string csv_row() const;
};

std::string transform_kind_name(TransformKind kind);

}  // namespace projprod
