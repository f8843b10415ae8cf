// Acceptance gate: runs the verification battery at the reference
// configuration (X = 10^6, primes {5, 7, 11, 13}) and prints one PASS/FAIL
// line per criterion.  Exit code is the number of failed criteria.

#include <cstdio>

#include "ecstat/verify.hpp"

int main() {
    ecstat::RunConfig cfg;  // defaults: X = 10^6, primes {5,7,11,13}, all threads
    const ecstat::VerifySummary summary = ecstat::verify_all(cfg);

    int failed = 0;
    for (const ecstat::CheckResult& c : summary.checks) {
        std::printf("%s  criterion %2d  %s — %s (%.3fs)\n", c.pass ? "PASS" : "FAIL", c.criterion,
                    c.name.c_str(), c.detail.c_str(), c.seconds);
        if (!c.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(summary.checks.size()) - failed,
                summary.checks.size());
    return failed;
}
