#pragma once

#include <cstdint>
#include <filesystem>

#include "projprod/tensor.hpp"
#include "projprod/transforms.hpp"

namespace projprod {

// PT3: a little-endian container for one dense order-3 float64 tensor.
//
//   offset  size  field
//   0       4     magic "PT3\0"
//   4       4     u32 version (= 1)
//   8       1     u8 dtype (1 = float64 little-endian)
//   9       1     u8 field flags (= 0)
//   10      2     padding (zero)
//   12      24    u64 n1, n2, n3
//   36      ...   payload: 8*n1*n2*n3 bytes, mode-1 fastest
//
// Matrices travel in the same container as degenerate tensors with n3 = 1.
inline constexpr std::uint32_t kPt3Version = 1;

void write_pt3(const std::filesystem::path& path, const Tensor3& A);
Tensor3 read_pt3(const std::filesystem::path& path);

// Matrix convenience wrappers over the degenerate n3 = 1 form.
void write_pt3_matrix(const std::filesystem::path& path, const Matrix& M);
Matrix read_pt3_matrix(const std::filesystem::path& path);

// --- seeded synthetic inputs ------------------------------------------------

// Video of a bright square drifting over a flat background with wraparound.
// Velocity (0,0) collapses the mode-3 rank to one.
struct MovingSquareSpec {
    Index n1 = 0, n2 = 0, n3 = 0;
    Index square = 4;       // side length, must fit the frame
    std::int64_t vx = 1, vy = 1;
    std::uint64_t seed = 0;
};

// Hyperspectral-style cube: every tube is a nonnegative mixture of s smooth
// spectral signatures, so the mode-3 unfolding has rank at most s while the
// frontal slices stay full-rank-ish.
struct SpectralCubeSpec {
    Index n1 = 0, n2 = 0, n3 = 0;
    Index signatures = 3;
    std::uint64_t seed = 0;
};

// Tensor with exact projected rank: slice i of the transform-domain tensor
// is a random rank-r product, pushed back through the given transform. Its
// tubes lie entirely in span(Q), so the projection error is zero.
struct ExactRankSpec {
    Index n1 = 0, n2 = 0, n3 = 0;
    Index rank = 1;
    std::uint64_t seed = 0;
};

Tensor3 gen_moving_square(const MovingSquareSpec& spec);
Tensor3 gen_spectral_cube(const SpectralCubeSpec& spec);
Tensor3 gen_exact_rank(const ExactRankSpec& spec, const Transform& T);

}  // namespace projprod
