#pragma once

#include <string>
#include <vector>

#include "ecstat/util.hpp"

namespace ecstat {

struct RunConfig {
    i64 height = 1'000'000;
    std::vector<i64> primes = {5, 7, 11, 13};
    int workers = 0;  // 0 = all hardware threads
};

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifySummary {
    RunConfig config;
    std::vector<CheckResult> checks;
    bool all_pass = true;
    std::string to_json() const;
    std::string to_text() const;  // one PASS/FAIL line per check
};

// Runs the full verification battery at the configured height bound.  The
// exact identities (rank table, moment bounds, class-number identities,
// trace-count identity, singular-pair counts) are height-independent; the
// enumeration-based comparisons scale their tolerances with the height.
// With an empty prime list only the rank-bound and class-number suites run.
VerifySummary verify_all(const RunConfig& cfg);

}  // namespace ecstat
