#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "projprod/decompositions.hpp"
#include "projprod/errors.hpp"
#include "projprod/io.hpp"
#include "support/common.hpp"

using namespace projprod;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* stem) {
    static int counter = 0;
    return fs::temp_directory_path() /
           (std::string("projprod-test-") + stem + "-" +
            std::to_string(::getpid()) + "-" + std::to_string(counter++) +
            ".pt3");
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(in),
                             std::istreambuf_iterator<char>());
}

void spew(const fs::path& p, const std::vector<char>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

struct FileGuard {
    fs::path path;
    ~FileGuard() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

}  // namespace

TEST_CASE("pt3 round trip is bit exact") {
    Xoshiro256pp rng(71);
    Tensor3 A = testsup::random_tensor(rng, 4, 3, 5);
    FileGuard f{temp_file("roundtrip")};
    write_pt3(f.path, A);
    Tensor3 B = read_pt3(f.path);
    REQUIRE(B.n1() == 4);
    REQUIRE(B.n2() == 3);
    REQUIRE(B.n3() == 5);
    CHECK(std::memcmp(A.data(), B.data(),
                      sizeof(double) * static_cast<std::size_t>(A.size())) == 0);
}

TEST_CASE("pt3 matrix container round trips") {
    Matrix M = testsup::random_matrix(3, 7, 5);
    FileGuard f{temp_file("matrix")};
    write_pt3_matrix(f.path, M);
    Matrix R = read_pt3_matrix(f.path);
    REQUIRE(R.rows() == 3);
    REQUIRE(R.cols() == 7);
    CHECK((M - R).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pt3 rejects malformed files") {
    Xoshiro256pp rng(72);
    Tensor3 A = testsup::random_tensor(rng, 2, 2, 2);
    FileGuard f{temp_file("malformed")};
    write_pt3(f.path, A);
    const std::vector<char> good = slurp(f.path);

    auto tampered = [&](std::size_t offset, char value) {
        std::vector<char> bad = good;
        bad[offset] = value;
        spew(f.path, bad);
    };

    tampered(0, 'X');  // magic
    CHECK_THROWS_AS(read_pt3(f.path), format_error);

    tampered(4, 9);  // version
    CHECK_THROWS_AS(read_pt3(f.path), format_error);

    tampered(8, 7);  // dtype
    CHECK_THROWS_AS(read_pt3(f.path), format_error);

    {  // truncated payload
        std::vector<char> bad = good;
        bad.pop_back();
        spew(f.path, bad);
        CHECK_THROWS_AS(read_pt3(f.path), format_error);
    }
    {  // trailing garbage
        std::vector<char> bad = good;
        bad.push_back(0);
        spew(f.path, bad);
        CHECK_THROWS_AS(read_pt3(f.path), format_error);
    }
    {  // extent overflow: n1 = 2^56 makes the payload unaddressable
        std::vector<char> bad = good;
        for (std::size_t i = 12; i < 20; ++i) bad[i] = '\xff';
        spew(f.path, bad);
        CHECK_THROWS_AS(read_pt3(f.path), format_error);
    }
    {  // zero extent
        std::vector<char> bad = good;
        for (std::size_t i = 12; i < 20; ++i) bad[i] = 0;
        spew(f.path, bad);
        CHECK_THROWS_AS(read_pt3(f.path), format_error);
    }

    CHECK_THROWS_AS(read_pt3(f.path.string() + ".does-not-exist"), format_error);
}

TEST_CASE("moving square generator") {
    MovingSquareSpec spec;
    spec.n1 = 12;
    spec.n2 = 10;
    spec.n3 = 8;
    spec.square = 3;
    spec.vx = 0;
    spec.vy = 0;
    spec.seed = 5;
    Tensor3 A = gen_moving_square(spec);

    // Static square: all frames equal, so the mode-3 unfolding is rank 1.
    SvdResult dec = svd(mode3_unfold(A));
    CHECK(dec.s(1) <= 1e-10 * dec.s(0));

    for (Index i = 0; i < A.size(); ++i) {
        const double v = A.data()[i];
        CHECK((v == 0.2 || v == 1.0));
    }

    spec.vx = 1;
    spec.vy = 2;
    Tensor3 B1 = gen_moving_square(spec);
    Tensor3 B2 = gen_moving_square(spec);
    CHECK(std::memcmp(B1.data(), B2.data(),
                      sizeof(double) * static_cast<std::size_t>(B1.size())) == 0);

    spec.square = 99;  // does not fit the frame
    CHECK_THROWS_AS(gen_moving_square(spec), argument_error);
}

TEST_CASE("spectral cube generator") {
    SpectralCubeSpec spec;
    spec.n1 = 10;
    spec.n2 = 9;
    spec.n3 = 12;
    spec.signatures = 2;
    spec.seed = 3;
    Tensor3 A = gen_spectral_cube(spec);

    SvdResult dec = svd(mode3_unfold(A));
    CHECK(dec.s(2) <= 1e-10 * dec.s(0));

    // The leading s mode-3 directions capture everything.
    Transform T = data_dependent_transform(A, 2);
    CHECK(projection_error(A, T) <= 1e-9 * frobenius_norm(A));

    Tensor3 B = gen_spectral_cube(spec);
    CHECK(std::memcmp(A.data(), B.data(),
                      sizeof(double) * static_cast<std::size_t>(A.size())) == 0);

    spec.signatures = 13;  // more signatures than bands
    CHECK_THROWS_AS(gen_spectral_cube(spec), argument_error);
}

TEST_CASE("exact rank generator") {
    ExactRankSpec spec;
    spec.n1 = 6;
    spec.n2 = 5;
    spec.n3 = 7;
    spec.rank = 2;
    spec.seed = 11;
    Transform T = random_orthogonal_transform(7, 3, 19);
    Tensor3 A = gen_exact_rank(spec, T);

    // Truncating at the construction rank is lossless.
    TsvdqFactors F = tsvdq(A, T, 2);
    CHECK(frobenius_norm(A - tsvdq_reconstruct(F)) <=
          1e-9 * frobenius_norm(A));
    CHECK(star_q_rank(A, T) <= 2);
    CHECK(projection_error(A, T) <= 1e-10 * frobenius_norm(A));

    // Full transform: the plain invertible-transform rank obeys the same cap.
    Transform full = random_orthogonal_transform(7, 7, 19);
    Tensor3 B = gen_exact_rank(spec, full);
    Tensor3 Bhat = mode3_product(B, full.Q.transpose());
    Index mrank = 0;
    for (Index i = 0; i < 7; ++i)
        mrank = std::max(mrank, numerical_rank(svd(Bhat.slice(i)).s));
    CHECK(mrank <= 2);
}
