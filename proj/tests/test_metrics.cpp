#include <cmath>

#include "doctest.h"
#include "projprod/decompositions.hpp"
#include "projprod/errors.hpp"
#include "projprod/metrics.hpp"
#include "support/common.hpp"

using namespace projprod;

TEST_CASE("relative error") {
    Xoshiro256pp rng(61);
    Tensor3 A = testsup::random_tensor(rng, 3, 4, 5);
    CHECK(relative_error(A, A) == 0.0);

    Tensor3 Z(3, 4, 5);
    CHECK(relative_error(A, Z) == 1.0);

    // 2x2x2 fixture against its averaging-basis rank-1 approximation:
    // error sqrt(2) over norm 2.
    Tensor3 C = testsup::counterexample();
    TsvdqFactors F = tsvdq(C, haar_transform(2, 1), 1);
    CHECK(std::abs(relative_error(C, tsvdq_reconstruct(F)) -
                   std::sqrt(2.0) / 2.0) <= 1e-12);

    CHECK_THROWS_AS(relative_error(Z, A), degenerate_input_error);
}

TEST_CASE("storage counts for the projected SVD") {
    StorageCount st = storage_tsvdq(120, 160, 120, 5, 12, TransformKind::Dct);
    CHECK(st.factors == 16800);
    CHECK(st.transform == 1440);
    CHECK(st.total() == 16800 + 1440);

    // Identity basis costs nothing to ship.
    StorageCount id = storage_tsvdq(120, 160, 120, 5, 12, TransformKind::Identity);
    CHECK(id.factors == 16800);
    CHECK(id.transform == 0);

    CHECK_THROWS_AS(storage_tsvdq(4, 4, 4, 0, 2, TransformKind::Dct),
                    argument_error);
}

TEST_CASE("storage counts for the energy-truncated variant") {
    // kappa = k*p stores exactly as many scalars as the rank-k form.
    StorageCount a = storage_tsvdq(120, 160, 120, 5, 12, TransformKind::Dct);
    StorageCount b = storage_tsvdq2(120, 160, 120, 5 * 12, 12, TransformKind::Dct);
    CHECK(a.factors == b.factors);
    CHECK(a.transform == b.transform);

    CHECK(storage_tsvdq2(4, 5, 6, 0, 2, TransformKind::Dct).factors == 0);

    StorageCount big = storage_tsvdq2(145, 145, 220, 290, 2, TransformKind::Dct);
    CHECK(big.factors == 84100);
    CHECK(big.transform == 440);
}

TEST_CASE("storage counts for the baselines") {
    StorageCount h = storage_hosvd(2, 2, 2, 1, 1, 1);
    CHECK(h.total() == 7);  // core 1 + three 2x1 factors
    CHECK(h.transform == 0);

    StorageCount hf = storage_hosvd(4, 3, 5, 4, 3, 5);
    CHECK(hf.total() == 4 * 3 * 5 + 16 + 9 + 25);

    StorageCount m = storage_matrix_svd(2, 2, 2, 1);
    CHECK(m.factors == 6);
    CHECK(m.transform == 0);

    StorageCount mf = storage_matrix_svd(4, 3, 5, 3);
    CHECK(mf.factors == 4u * 5u * 3u + 3u * 3u);
}

TEST_CASE("compression ratio") {
    // Exact integer ratio, cast once.
    StorageCount st;
    st.factors = 3;
    st.transform = 1;
    CHECK(compression_ratio(2, 2, 2, st) == 2.0);

    // CR > 1 exactly when the stored count beats the raw count.
    StorageCount cheap = storage_matrix_svd(6, 6, 6, 1);
    CHECK(compression_ratio(6, 6, 6, cheap) > 1.0);
    StorageCount expensive = storage_matrix_svd(2, 2, 2, 2);  // 2*2*2*2+4 = 20
    CHECK(compression_ratio(2, 2, 2, expensive) < 1.0);

    // Monotone: growing k can only grow storage, shrinking the ratio.
    double prev = 1e300;
    for (Index k = 1; k <= 4; ++k) {
        double cr = compression_ratio(
            8, 8, 8, storage_tsvdq(8, 8, 8, k, 3, TransformKind::Dct));
        CHECK(cr < prev);
        prev = cr;
    }
}

TEST_CASE("csv schema is pinned") {
    CHECK(CompressionReport::csv_header() ==
          "method,transform,k,p,gamma,kappa,re,st_factors,st_transform,cr");

    CompressionReport r;
    r.method = "tsvdq";
    r.transform = "dct";
    r.k = 5;
    r.p = 12;
    r.storage = storage_tsvdq(120, 160, 120, 5, 12, TransformKind::Dct);
    r.re = 0.25;
    r.cr = 126.3157894736842;
    std::string row = r.csv_row();
    CHECK(row.substr(0, 18) == "tsvdq,dct,5,12,0,0");
    CHECK(row.find(",16800,1440,") != std::string::npos);
}

TEST_CASE("transform kind names") {
    CHECK(transform_kind_name(TransformKind::Identity) == "identity");
    CHECK(transform_kind_name(TransformKind::Dct) == "dct");
    CHECK(transform_kind_name(TransformKind::DataDependent) == "data");
    CHECK(transform_kind_name(TransformKind::RandomOrthogonal) == "random");
}
