// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Runs the whole verification suite once and grades criteria off the
// individual check results plus their measured runtimes.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "projprod/verify.hpp"

using projprod::verify::CheckResult;

namespace {

const CheckResult* find(const std::vector<CheckResult>& rs,
                        const std::string& name) {
    for (const CheckResult& r : rs)
        if (r.name == name) return &r;
    return nullptr;
}

struct Gate {
    int number;
    std::string label;
    std::vector<std::string> checks;
    double millis_budget = 0.0;  // 0 = untimed; budget applies per check
};

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    projprod::verify::Options opts;
    opts.seed = 0;
    const std::vector<CheckResult> results = projprod::verify::run_checks(opts);
    const double total_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();

    const Gate gates[] = {
        {1, "worked 4-point tube fixture, 1e-12, under 1 ms", {"appendix-a"}, 1.0},
        {2, "2x2x2 error-split fixture, parts (1,2) and (0,2)", {"counterexample"}, 0.0},
        {3, "error decomposition identity, 100 instances, under 20 s",
         {"eckart-young-identity"}, 20000.0},
        {4, "projection tail equals trailing mode-3 spectrum", {"projection-tail"}, 0.0},
        {5, "leading mode-3 basis beats 50 random bases per instance",
         {"projection-optimality"}, 0.0},
        {6, "projected SVD dominates matched Tucker truncation", {"hosvd-dominance"}, 0.0},
        {7, "energy-truncated variant dominates at matched energy",
         {"svdii-dominance"}, 0.0},
        {8, "product algebra residuals at 1e-10", {"star-q-algebra", "scale-law"}, 0.0},
        {9, "matrix SVD kernel vs independent eigen oracle",
         {"svd-contract", "svd-gram-oracle"}, 0.0},
        {10, "data-dependent basis near-optimal at small width, under 10 s",
         {"spectral-trend"}, 10000.0},
        {11, "full verification suite under 60 s", {}, 60000.0},
    };

    int failures = 0;
    for (const Gate& g : gates) {
        bool ok = true;
        std::string why;
        if (g.number == 11) {
            for (const CheckResult& r : results)
                if (!r.passed) {
                    ok = false;
                    why = r.name + " failed";
                    break;
                }
            if (ok && total_ms >= g.millis_budget) {
                ok = false;
                why = "suite took " + std::to_string(total_ms) + " ms";
            }
        } else {
            for (const std::string& name : g.checks) {
                const CheckResult* r = find(results, name);
                if (!r) {
                    ok = false;
                    why = name + " missing";
                } else if (!r->passed) {
                    ok = false;
                    why = name + " residual " + std::to_string(r->residual);
                } else if (g.millis_budget > 0.0 && r->millis >= g.millis_budget) {
                    ok = false;
                    why = name + " took " + std::to_string(r->millis) + " ms";
                }
            }
        }
        std::printf("%s acceptance %2d: %s%s%s\n", ok ? "pass" : "FAIL",
                    g.number, g.label.c_str(), why.empty() ? "" : " -- ",
                    why.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
