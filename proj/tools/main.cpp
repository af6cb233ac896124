// projprod command-line harness: gen / compress / sweep / verify
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "projprod/decompositions.hpp"
#include "projprod/errors.hpp"
#include "projprod/io.hpp"
#include "projprod/metrics.hpp"
#include "projprod/rng.hpp"
#include "projprod/tensor.hpp"
#include "projprod/transforms.hpp"
#include "projprod/verify.hpp"

namespace {

using namespace projprod;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

long long parse_int(const std::string& tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw usage_error("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw usage_error("not an integer: '" + tok + "'");
    return v;
}

std::vector<Index> parse_fixed_ints(const std::string& s, std::size_t n,
                                    const char* what) {
    const auto toks = split(s, ',');
    if (toks.size() != n)
        throw usage_error(std::string(what) + " needs " + std::to_string(n) +
                          " comma-separated integers, got '" + s + "'");
    std::vector<Index> out;
    for (const auto& t : toks) out.push_back(static_cast<Index>(parse_int(t)));
    return out;
}

// grid syntax: comma list of integers or a:b or a:b:step ranges
std::vector<Index> parse_grid(const std::string& s) {
    std::vector<Index> out;
    for (const auto& tok : split(s, ',')) {
        const auto parts = split(tok, ':');
        if (parts.size() == 1) {
            out.push_back(static_cast<Index>(parse_int(parts[0])));
        } else if (parts.size() == 2 || parts.size() == 3) {
            const long long a = parse_int(parts[0]);
            const long long b = parse_int(parts[1]);
            const long long step = parts.size() == 3 ? parse_int(parts[2]) : 1;
            if (step < 1) throw usage_error("grid step must be >= 1: '" + tok + "'");
            if (a > b) throw usage_error("empty grid range: '" + tok + "'");
            for (long long v = a; v <= b; v += step)
                out.push_back(static_cast<Index>(v));
        } else {
            throw usage_error("bad grid token: '" + tok + "'");
        }
    }
    if (out.empty()) throw usage_error("empty grid: '" + s + "'");
    for (Index v : out)
        if (v < 1) throw usage_error("grid values must be >= 1: '" + s + "'");
    return out;
}

Transform named_transform(const std::string& name, Index n3, Index p,
                          std::uint64_t seed, const Tensor3* data) {
    if (name == "identity") return identity_transform(n3, p);
    if (name == "random") return random_orthogonal_transform(n3, p, seed);
    if (name == "dct") return dct_transform(n3, p);
    if (name == "haar") return haar_transform(n3, p);
    if (name == "data") {
        if (!data)
            throw usage_error("data-dependent transform needs an input tensor");
        return data_dependent_transform(*data, p);
    }
    throw usage_error("unknown transform '" + name +
                      "' (identity|random|dct|haar|data)");
}

void append_csv(const std::string& path, const CompressionReport& rep) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw usage_error("cannot open csv file '" + path + "'");
    if (fresh) out << CompressionReport::csv_header() << "\n";
    out << rep.csv_row() << "\n";
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::string dims;
    std::string output = "out.pt3";
    std::string velocity = "1,1";
    std::string transform = "random";
    std::uint64_t seed = 0;
    Index square = 4;
    Index signatures = 3;
    Index rank = 1;
    Index p = 0;  // 0 = n3
};

int cmd_gen(const GenArgs& a) {
    const auto d = parse_fixed_ints(a.dims, 3, "--dims");
    Tensor3 A(1, 1, 1);
    if (a.kind == "moving-square") {
        const auto v = parse_fixed_ints(a.velocity, 2, "--velocity");
        MovingSquareSpec spec{d[0], d[1], d[2], a.square, v[0], v[1], a.seed};
        A = gen_moving_square(spec);
    } else if (a.kind == "spectral-cube") {
        SpectralCubeSpec spec{d[0], d[1], d[2], a.signatures, a.seed};
        A = gen_spectral_cube(spec);
    } else if (a.kind == "exact-rank") {
        const Index p = a.p > 0 ? a.p : d[2];
        if (a.transform == "data")
            throw usage_error("exact-rank generation cannot use the "
                              "data-dependent transform");
        Transform T = named_transform(a.transform, d[2], p,
                                      derive_seed(a.seed, 0x7f), nullptr);
        ExactRankSpec spec{d[0], d[1], d[2], a.rank, a.seed};
        A = gen_exact_rank(spec, T);
    } else {
        throw usage_error("unknown kind '" + a.kind +
                          "' (moving-square|spectral-cube|exact-rank)");
    }
    write_pt3(a.output, A);
    std::printf("wrote %s (%lld x %lld x %lld)\n", a.output.c_str(),
                static_cast<long long>(A.n1()), static_cast<long long>(A.n2()),
                static_cast<long long>(A.n3()));
    return kExitOk;
}

// ---- compress -----------------------------------------------------------------

struct CompressArgs {
    std::string input;
    std::string method;
    std::string transform = "data";
    std::string multirank;
    std::string csv;
    std::string recon_out;
    std::string factors_out;
    std::string transform_out;
    Index k = 0;
    Index p = 0;  // 0 = n3
    double gamma = 0.0;
    std::uint64_t seed = 0;
    bool k_set = false, p_set = false, gamma_set = false, mr_set = false;
    bool transform_set = false;
};

void forbid(bool set, const char* flag, const std::string& method) {
    if (set)
        throw usage_error(std::string(flag) + " is not valid with --method " +
                          method);
}

int cmd_compress(const CompressArgs& a) {
    Tensor3 A = read_pt3(a.input);
    const Index n1 = A.n1(), n2 = A.n2(), n3 = A.n3();
    const Index p = a.p > 0 ? a.p : n3;

    CompressionReport rep;
    rep.method = a.method;
    std::optional<Tensor3> recon;
    std::optional<Transform> T;

    if (a.method == "tsvdq" || a.method == "tsvdq2") {
        T = named_transform(a.transform, n3, p, a.seed, &A);
    }

    if (a.method == "tsvdq") {
        forbid(a.gamma_set, "--gamma", a.method);
        forbid(a.mr_set, "--multirank", a.method);
        if (!a.k_set) throw usage_error("--method tsvdq requires --k");
        TsvdqFactors F = tsvdq(A, *T, a.k);
        recon = tsvdq_reconstruct(F);
        rep.transform = transform_kind_name(T->kind);
        rep.k = a.k;
        rep.p = p;
        rep.re = relative_error(A, *recon);
        rep.storage = storage_tsvdq(n1, n2, n3, a.k, p, T->kind);
        if (!a.factors_out.empty()) {
            Tensor3 U(n1, a.k, p), V(n2, a.k, p), S(a.k, 1, p);
            for (Index s = 0; s < p; ++s) {
                U.slice(s) = F.Uhat[static_cast<std::size_t>(s)];
                V.slice(s) = F.Vhat[static_cast<std::size_t>(s)];
                S.slice(s) = F.shat[static_cast<std::size_t>(s)];
            }
            write_pt3(a.factors_out + ".U.pt3", U);
            write_pt3(a.factors_out + ".S.pt3", S);
            write_pt3(a.factors_out + ".V.pt3", V);
            write_pt3_matrix(a.factors_out + ".Q.pt3", T->Q);
        }
    } else if (a.method == "tsvdq2") {
        forbid(a.k_set, "--k", a.method);
        forbid(a.mr_set, "--multirank", a.method);
        if (!a.gamma_set) throw usage_error("--method tsvdq2 requires --gamma");
        TsvdqIIFactors F = tsvdq2(A, *T, a.gamma);
        recon = tsvdq2_reconstruct(F);
        rep.transform = transform_kind_name(T->kind);
        rep.p = p;
        rep.gamma = a.gamma;
        rep.kappa = F.implicit_rank();
        rep.re = relative_error(A, *recon);
        rep.storage = storage_tsvdq2(n1, n2, n3, rep.kappa, p, T->kind);
    } else if (a.method == "hosvd") {
        forbid(a.gamma_set, "--gamma", a.method);
        forbid(a.transform_set, "--transform", a.method);
        Index k1, k2, k3;
        if (a.mr_set) {
            forbid(a.k_set, "--k", a.method + " with --multirank");
            const auto mr = parse_fixed_ints(a.multirank, 3, "--multirank");
            k1 = mr[0]; k2 = mr[1]; k3 = mr[2];
        } else {
            if (!a.k_set)
                throw usage_error("--method hosvd requires --k or --multirank");
            k1 = a.k; k2 = a.k; k3 = p;
        }
        HosvdFactors H = hosvd(A, k1, k2, k3);
        recon = hosvd_reconstruct(H);
        // multirank rides in (kappa, k, p)
        rep.kappa = k1;
        rep.k = k2;
        rep.p = k3;
        rep.re = relative_error(A, *recon);
        rep.storage = storage_hosvd(n1, n2, n3, k1, k2, k3);
    } else if (a.method == "matrix-svd") {
        forbid(a.transform_set, "--transform", a.method);
        forbid(a.p_set, "--p", a.method);
        forbid(a.gamma_set, "--gamma", a.method);
        forbid(a.mr_set, "--multirank", a.method);
        if (!a.k_set) throw usage_error("--method matrix-svd requires --k");
        MatrixSvdBaseline mb = matrix_svd_baseline(A, a.k);
        rep.k = a.k;
        rep.re = mb.error / frobenius_norm(A);
        rep.storage = storage_matrix_svd(n1, n2, n3, a.k);
        Matrix flat =
            mb.factors.U * mb.factors.s.asDiagonal() * mb.factors.V.transpose();
        Tensor3 R(n1, n2, n3);
        for (Index s = 0; s < n3; ++s) R.slice(s) = flat.middleRows(s * n1, n1);
        recon = std::move(R);
    } else {
        throw usage_error("unknown method '" + a.method +
                          "' (tsvdq|tsvdq2|hosvd|matrix-svd)");
    }

    rep.cr = compression_ratio(n1, n2, n3, rep.storage);
    std::printf("%s\n", rep.csv_row().c_str());
    if (!a.csv.empty()) append_csv(a.csv, rep);
    if (!a.recon_out.empty()) write_pt3(a.recon_out, *recon);
    if (!a.transform_out.empty()) {
        if (!T) throw usage_error("--transform-out needs a transform method");
        write_pt3_matrix(a.transform_out, T->Q);
    }
    return kExitOk;
}

// ---- sweep ---------------------------------------------------------------------

struct SweepArgs {
    std::string input;
    std::string k_grid;
    std::string p_grid;
    std::string transforms = "identity,dct,data";
    std::string csv = "sweep.csv";
    std::string plot;
    std::uint64_t seed = 0;
};

int cmd_sweep(const SweepArgs& a) {
    Tensor3 A = read_pt3(a.input);
    const Index n1 = A.n1(), n2 = A.n2(), n3 = A.n3();
    const Index kmax = std::min(n1, n2);
    const std::vector<Index> ks =
        a.k_grid.empty() ? parse_grid("1:" + std::to_string(kmax))
                         : parse_grid(a.k_grid);
    const std::vector<Index> ps = a.p_grid.empty()
                                      ? parse_grid("1:" + std::to_string(n3))
                                      : parse_grid(a.p_grid);
    const std::vector<std::string> names = split(a.transforms, ',');
    if (names.empty() || (names.size() == 1 && names[0].empty()))
        throw usage_error("empty transform list");
    for (Index k : ks)
        if (k > kmax)
            throw usage_error("k = " + std::to_string(k) + " exceeds min(n1,n2) = " +
                              std::to_string(kmax));
    for (Index p : ps)
        if (p > n3)
            throw usage_error("p = " + std::to_string(p) + " exceeds n3 = " +
                              std::to_string(n3));

    const double anorm = frobenius_norm(A);
    std::ofstream out(a.csv, std::ios::trunc);
    if (!out) throw usage_error("cannot open csv file '" + a.csv + "'");
    out << CompressionReport::csv_header() << "\n";
    for (const auto& name : names) {
        for (Index p : ps) {
            Transform T = named_transform(name, n3, p, a.seed, &A);
            for (Index k : ks) {
                TsvdqFactors F = tsvdq(A, T, k);
                CompressionReport rep;
                rep.method = "tsvdq";
                rep.transform = transform_kind_name(T.kind);
                rep.k = k;
                rep.p = p;
                rep.re = frobenius_norm(A - tsvdq_reconstruct(F)) / anorm;
                rep.storage = storage_tsvdq(n1, n2, n3, k, p, T.kind);
                rep.cr = compression_ratio(n1, n2, n3, rep.storage);
                out << rep.csv_row() << "\n";
            }
        }
    }
    out.close();

    const std::size_t dot = a.csv.find_last_of('.');
    const std::string stem = dot == std::string::npos ? a.csv : a.csv.substr(0, dot);
    const std::string plot_path = a.plot.empty() ? stem + ".gp" : a.plot;
    std::ofstream gp(plot_path, std::ios::trunc);
    if (!gp) throw usage_error("cannot open plot file '" + plot_path + "'");
    gp << "# relative error vs truncation, one curve per (transform, p)\n"
       << "csv = '" << a.csv << "'\n"
       << "set datafile separator ','\n"
       << "set xlabel 'k'\nset ylabel 'relative error'\n"
       << "set logscale y\nset key outside\n"
       << "plot \\\n";
    bool first = true;
    for (const auto& name : names)
        for (Index p : ps) {
            if (!first) gp << ", \\\n";
            first = false;
            gp << "  csv skip 1 using 3:(strcol(2) eq '" << name
               << "' && $4 == " << p << " ? $7 : NaN) with linespoints title '"
               << name << " p=" << p << "'";
        }
    gp << "\n";
    std::printf("wrote %s (%zu rows) and %s\n", a.csv.c_str(),
                names.size() * ps.size() * ks.size(), plot_path.c_str());
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------------

struct VerifyArgs {
    std::uint64_t seed = 0;
    std::string only;
    bool list = false;
};

int cmd_verify(const VerifyArgs& a) {
    if (a.list) {
        for (const auto& n : verify::check_names()) std::printf("%s\n", n.c_str());
        return kExitOk;
    }
    verify::Options opts;
    opts.seed = a.seed;
    opts.only = a.only;
    const auto results = verify::run_checks(opts);
    if (results.empty())
        throw usage_error("no checks match '" + a.only + "'");
    int failed = 0;
    double total_ms = 0.0;
    for (const auto& r : results) {
        std::printf("[%s] %-24s residual=%.3e tol=%.1e (%.0f ms)%s%s\n",
                    r.passed ? "ok" : "FAIL", r.name.c_str(), r.residual,
                    r.tolerance, r.millis, r.detail.empty() ? "" : " ",
                    r.detail.c_str());
        if (!r.passed) ++failed;
        total_ms += r.millis;
    }
    std::printf("%zu checks, %d failed, %.1f s\n", results.size(), failed,
                total_ms / 1000.0);
    return failed == 0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projected tensor-tensor products and truncated decompositions"};
    app.require_subcommand(1);

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a synthetic tensor");
    gen->add_option("--kind", ga.kind,
                    "moving-square|spectral-cube|exact-rank")->required();
    gen->add_option("--dims", ga.dims, "n1,n2,n3")->required();
    gen->add_option("-o,--output", ga.output, "output PT3 path");
    gen->add_option("--seed", ga.seed, "rng seed");
    gen->add_option("--square", ga.square, "square side (moving-square)");
    gen->add_option("--velocity", ga.velocity, "vx,vy (moving-square)");
    gen->add_option("--signatures", ga.signatures, "spectra count (spectral-cube)");
    gen->add_option("--rank", ga.rank, "per-slice rank (exact-rank)");
    gen->add_option("--p", ga.p, "projection width (exact-rank)");
    gen->add_option("--transform", ga.transform,
                    "identity|random|dct|haar (exact-rank)");

    CompressArgs ca;
    auto* comp = app.add_subcommand("compress", "compress a PT3 tensor");
    comp->add_option("-i,--input", ca.input, "input PT3 path")->required();
    comp->add_option("--method", ca.method,
                     "tsvdq|tsvdq2|hosvd|matrix-svd")->required();
    auto* t_opt = comp->add_option("--transform", ca.transform,
                                   "identity|random|dct|haar|data");
    auto* k_opt = comp->add_option("--k", ca.k, "truncation");
    auto* p_opt = comp->add_option("--p", ca.p, "projection width (default n3)");
    auto* g_opt = comp->add_option("--gamma", ca.gamma, "energy fraction (tsvdq2)");
    auto* m_opt = comp->add_option("--multirank", ca.multirank, "k1,k2,k3 (hosvd)");
    comp->add_option("--seed", ca.seed, "transform seed");
    comp->add_option("--csv", ca.csv, "append report row to this CSV");
    comp->add_option("--recon-out", ca.recon_out, "write reconstruction PT3");
    comp->add_option("--factors-out", ca.factors_out,
                     "factor file prefix (tsvdq)");
    comp->add_option("--transform-out", ca.transform_out, "write Q as PT3");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "full-factorial tsvdq sweep");
    sweep->add_option("-i,--input", sa.input, "input PT3 path")->required();
    sweep->add_option("--k-grid", sa.k_grid, "e.g. 1,2,4 or 1:8 or 1:8:2");
    sweep->add_option("--p-grid", sa.p_grid, "projection widths");
    sweep->add_option("--transforms", sa.transforms, "comma list");
    sweep->add_option("--csv", sa.csv, "output CSV path");
    sweep->add_option("--plot", sa.plot, "output gnuplot script path");
    sweep->add_option("--seed", sa.seed, "transform seed");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run the theorem checks");
    ver->add_option("--seed", va.seed, "instance seed");
    ver->add_option("--only", va.only, "substring filter on check names");
    ver->add_flag("--list", va.list, "list check names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(ga);
        if (comp->parsed()) {
            ca.k_set = k_opt->count() > 0;
            ca.p_set = p_opt->count() > 0;
            ca.gamma_set = g_opt->count() > 0;
            ca.mr_set = m_opt->count() > 0;
            ca.transform_set = t_opt->count() > 0;
            return cmd_compress(ca);
        }
        if (sweep->parsed()) return cmd_sweep(sa);
        if (ver->parsed()) return cmd_verify(va);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
