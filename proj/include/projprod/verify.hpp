#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace projprod::verify {

// Outcome of one named check. `residual` is the worst defect the check
// observed, in the units its tolerance is stated in (absolute, relative, or
// a violation count for exact checks); a check that throws is reported
// failed with the message in `detail`.
struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    double millis = 0.0;
    std::string detail;
};

struct Options {
    std::uint64_t seed = 0;
    // Substring filter on check names; empty runs everything.
    std::string only;
};

// Names of all registered checks, in execution order.
std::vector<std::string> check_names();

// Run the (filtered) checks. Deterministic for a fixed seed: the same
// residuals come back on every run.
std::vector<CheckResult> run_checks(const Options& opts);

}  // namespace projprod::verify
