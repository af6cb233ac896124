#include "projprod/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "projprod/errors.hpp"
#include "projprod/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "PT3 I/O assumes a little-endian host");
static_assert(std::numeric_limits<double>::is_iec559,
              "PT3 I/O assumes IEEE-754 float64");

namespace projprod {

namespace {

constexpr std::size_t kHeaderSize = 36;
constexpr char kMagic[4] = {'P', 'T', '3', '\0'};

void put_u32(unsigned char* at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) at[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_u64(unsigned char* at, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) at[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint32_t get_u32(const unsigned char* at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{at[i]} << (8 * i);
    return v;
}

std::uint64_t get_u64(const unsigned char* at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{at[i]} << (8 * i);
    return v;
}

[[noreturn]] void bad(const std::filesystem::path& path, const std::string& why) {
    throw format_error(path.string() + ": " + why);
}

}  // namespace

void write_pt3(const std::filesystem::path& path, const Tensor3& A) {
    unsigned char header[kHeaderSize] = {};
    std::memcpy(header, kMagic, 4);
    put_u32(header + 4, kPt3Version);
    header[8] = 1;   // dtype float64
    header[9] = 0;   // field flags
    put_u64(header + 12, static_cast<std::uint64_t>(A.n1()));
    put_u64(header + 20, static_cast<std::uint64_t>(A.n2()));
    put_u64(header + 28, static_cast<std::uint64_t>(A.n3()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error(path.string() + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(header), kHeaderSize);
    out.write(reinterpret_cast<const char*>(A.data()),
              static_cast<std::streamsize>(sizeof(double)) * A.size());
    if (!out) throw format_error(path.string() + ": short write");
}

Tensor3 read_pt3(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad(path, "cannot open");
    unsigned char header[kHeaderSize];
    in.read(reinterpret_cast<char*>(header), kHeaderSize);
    if (in.gcount() != kHeaderSize) bad(path, "truncated header");
    if (std::memcmp(header, kMagic, 4) != 0) bad(path, "bad magic");
    const std::uint32_t version = get_u32(header + 4);
    if (version != kPt3Version)
        bad(path, "unsupported version " + std::to_string(version));
    if (header[8] != 1)
        bad(path, "unsupported dtype " + std::to_string(int{header[8]}));
    if (header[9] != 0)
        bad(path, "unsupported field flags " + std::to_string(int{header[9]}));

    const std::uint64_t n1 = get_u64(header + 12);
    const std::uint64_t n2 = get_u64(header + 20);
    const std::uint64_t n3 = get_u64(header + 28);
    if (n1 == 0 || n2 == 0 || n3 == 0) bad(path, "zero extent");
    // Overflow gate: the payload byte count must fit comfortably in 63 bits.
    constexpr std::uint64_t kMaxElems = std::uint64_t{1} << 59;
    if (n1 > kMaxElems / n2 || (n1 * n2) > kMaxElems / n3)
        bad(path, "element count overflows the addressable payload");
    const std::uint64_t elems = n1 * n2 * n3;

    in.seekg(0, std::ios::end);
    const auto file_size = static_cast<std::uint64_t>(in.tellg());
    if (file_size != kHeaderSize + elems * sizeof(double))
        bad(path, "payload size mismatch (truncated or trailing bytes)");
    in.seekg(kHeaderSize, std::ios::beg);

    Tensor3 A(static_cast<Index>(n1), static_cast<Index>(n2),
              static_cast<Index>(n3));
    in.read(reinterpret_cast<char*>(A.data()),
            static_cast<std::streamsize>(elems * sizeof(double)));
    if (static_cast<std::uint64_t>(in.gcount()) != elems * sizeof(double))
        bad(path, "short read");
    return A;
}

void write_pt3_matrix(const std::filesystem::path& path, const Matrix& M) {
    Tensor3 A(M.rows(), M.cols(), 1);
    A.slice(0) = M;
    write_pt3(path, A);
}

Matrix read_pt3_matrix(const std::filesystem::path& path) {
    Tensor3 A = read_pt3(path);
    if (A.n3() != 1)
        throw format_error(path.string() + ": expected a matrix (n3 = 1), got n3 = " +
                           std::to_string(A.n3()));
    return A.slice(0);
}

Tensor3 gen_moving_square(const MovingSquareSpec& spec) {
    Tensor3 A(spec.n1, spec.n2, spec.n3);
    if (spec.square < 1 || spec.square > std::min(spec.n1, spec.n2))
        throw argument_error("gen_moving_square: square side " +
                             std::to_string(spec.square) +
                             " does not fit the frame");
    Xoshiro256pp rng(derive_seed(spec.seed, 0x6d737175));  // "msqu"
    const auto x0 = static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(spec.n1)));
    const auto y0 = static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(spec.n2)));

    const auto wrap = [](std::int64_t v, Index n) {
        const std::int64_t m = v % static_cast<std::int64_t>(n);
        return static_cast<Index>(m < 0 ? m + n : m);
    };

    A.tubes_view().setConstant(0.2);
    for (Index f = 0; f < spec.n3; ++f) {
        const std::int64_t cx = x0 + spec.vx * f;
        const std::int64_t cy = y0 + spec.vy * f;
        for (Index di = 0; di < spec.square; ++di)
            for (Index dj = 0; dj < spec.square; ++dj)
                A(wrap(cx + di, spec.n1), wrap(cy + dj, spec.n2), f) = 1.0;
    }
    return A;
}

Tensor3 gen_spectral_cube(const SpectralCubeSpec& spec) {
    const Index s = spec.signatures;
    if (s < 1 || s > spec.n3)
        throw argument_error("gen_spectral_cube: signatures " +
                             std::to_string(s) + " outside [1," +
                             std::to_string(spec.n3) + "]");
    Xoshiro256pp rng(derive_seed(spec.seed, 0x73706563));  // "spec"
    const double n3 = static_cast<double>(spec.n3);

    // Smooth spectral signatures: Gaussian bands with centers spread over
    // the middle of the spectrum, away from the first few bands so that a
    // fixed leading-slice basis (the identity transform) sees little energy.
    Matrix V(spec.n3, s);
    for (Index l = 0; l < s; ++l) {
        const double u = rng.uniform();
        const double center =
            n3 * (0.25 + 0.5 * (static_cast<double>(l) + 0.5 * u) /
                             static_cast<double>(s));
        const double width = n3 * (0.04 + 0.08 * rng.uniform());
        for (Index t = 0; t < spec.n3; ++t) {
            const double d = (static_cast<double>(t) - center) / width;
            V(t, l) = std::exp(-0.5 * d * d);
        }
    }

    // Nonnegative abundance maps: a floor plus a few Gaussian blobs. Sums of
    // blobs at different centers are not separable, so the frontal slices of
    // the transform-domain tensor keep a slowly decaying spectrum.
    Tensor3 A(spec.n1, spec.n2, spec.n3);
    const double d1 = static_cast<double>(spec.n1);
    const double d2 = static_cast<double>(spec.n2);
    for (Index l = 0; l < s; ++l) {
        Matrix W = Matrix::Constant(spec.n1, spec.n2, 0.05);
        const int blobs = 2 + static_cast<int>(rng.uniform_below(2));
        for (int b = 0; b < blobs; ++b) {
            const double ci = d1 * rng.uniform();
            const double cj = d2 * rng.uniform();
            const double radius = 0.12 * std::min(d1, d2) * (0.6 + rng.uniform());
            const double amp = 0.3 + 0.7 * rng.uniform();
            for (Index j = 0; j < spec.n2; ++j)
                for (Index i = 0; i < spec.n1; ++i) {
                    const double dx = (static_cast<double>(i) - ci) / radius;
                    const double dy = (static_cast<double>(j) - cj) / radius;
                    W(i, j) += amp * std::exp(-0.5 * (dx * dx + dy * dy));
                }
        }
        // Rank-1 update of the tube matrix: tubes gain W(i,j) * V(:,l).
        A.tubes_view() +=
            Eigen::Map<const Vector>(W.data(), W.size()) * V.col(l).transpose();
    }
    return A;
}

Tensor3 gen_exact_rank(const ExactRankSpec& spec, const Transform& T) {
    if (spec.rank < 1 || spec.rank > std::min(spec.n1, spec.n2))
        throw argument_error("gen_exact_rank: rank " + std::to_string(spec.rank) +
                             " outside [1," +
                             std::to_string(std::min(spec.n1, spec.n2)) + "]");
    if (T.n3() != spec.n3)
        throw shape_error("gen_exact_rank: transform length mismatch");
    Xoshiro256pp rng(derive_seed(spec.seed, 0x78727431));  // "xrt1"
    Tensor3 Chat(spec.n1, spec.n2, T.p());
    for (Index i = 0; i < T.p(); ++i) {
        Matrix X(spec.n1, spec.rank), Y(spec.n2, spec.rank);
        for (Index c = 0; c < spec.rank; ++c) {
            for (Index r = 0; r < spec.n1; ++r) X(r, c) = rng.normal();
            for (Index r = 0; r < spec.n2; ++r) Y(r, c) = rng.normal();
        }
        Chat.slice(i) = X * Y.transpose();
    }
    return mode3_product(Chat, T.Q);
}

}  // namespace projprod
