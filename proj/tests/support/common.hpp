#pragma once

#include <vector>

#include "projprod/rng.hpp"
#include "projprod/tensor.hpp"

namespace testsup {

using projprod::Index;
using projprod::Matrix;
using projprod::Tensor3;

// 2x2x2 tensor with slices I2 and diag(1,-1)
inline Tensor3 counterexample() {
    Tensor3 A(2, 2, 2);
    A(0, 0, 0) = 1.0;
    A(1, 1, 0) = 1.0;
    A(0, 0, 1) = 1.0;
    A(1, 1, 1) = -1.0;
    return A;
}

inline Tensor3 make_tube(const std::vector<double>& v) {
    Tensor3 t(1, 1, static_cast<Index>(v.size()));
    for (Index k = 0; k < t.n3(); ++k) t(0, 0, k) = v[static_cast<std::size_t>(k)];
    return t;
}

inline Tensor3 random_tensor(projprod::Xoshiro256pp& rng, Index n1, Index n2,
                             Index n3) {
    Tensor3 A(n1, n2, n3);
    for (Index i = 0; i < A.size(); ++i) A.data()[i] = rng.normal();
    return A;
}

inline Matrix random_matrix(projprod::Xoshiro256pp& rng, Index m, Index n) {
    Matrix A(m, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i) A(i, j) = rng.normal();
    return A;
}

// Seed-based conveniences for tests that need one fixture, not a stream.
inline Tensor3 random_tensor(Index n1, Index n2, Index n3, std::uint64_t seed) {
    projprod::Xoshiro256pp rng(seed);
    return random_tensor(rng, n1, n2, n3);
}

inline Matrix random_matrix(Index m, Index n, std::uint64_t seed) {
    projprod::Xoshiro256pp rng(seed);
    return random_matrix(rng, m, n);
}

inline double tube_entry(const Tensor3& t, Index k) { return t(0, 0, k); }

}  // namespace testsup
