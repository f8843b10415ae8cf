#pragma once

#include <string>
#include <vector>

#include "ecstat/reduction.hpp"

namespace ecstat {

struct TraceFactor {
    i64 p = 5;
    int e = 1;  // 1 or 2
    int r = 2;  // odd or 2 when e = 1; 1 when e = 2
};

// Moment specification: product over factors of coef(E, p^e)^r averaged over
// the family.  Factors are kept sorted by prime so that permuted inputs
// evaluate bit-identically.
struct TraceMomentSpec {
    std::vector<TraceFactor> factors;
    CoefKind kind = CoefKind::AHat;
};

// Syntax "5^1:2,7^2:1" (p^e:r comma-separated).
TraceMomentSpec parse_trace_spec(const std::string& text, CoefKind kind);
std::string to_string(const TraceMomentSpec& spec);

// Validates the hypothesis set: distinct primes >= 5, e in {1,2}, r odd or 2
// for e = 1, r = 1 for e = 2, and the product of primes below the cap.
void validate_trace_spec(const TraceMomentSpec& spec, i64 max_prime_product = 1000);

// Predicted limit constant: in {-1, 0, +1}.
int predicted_constant(const TraceMomentSpec& spec);

struct TraceMomentReport {
    TraceMomentSpec spec;
    i64 x = 0;
    i64 family_size = 0;
    double empirical = 0.0;
    int predicted = 0;
    double tolerance = 0.0;
    bool pass = false;
    bool range_warning = false;  // product of primes beyond X^{1/3}
    std::string to_json() const;
};

TraceMomentReport trace_moment(const TraceMomentSpec& spec, i64 x, int workers = 1);

// One scan computing the a^(p)^2 moment, the a^(p^2) moment and the good
// density at p.  The three satisfy m2 = m1 - 2 * good exactly curve by curve.
struct SquareMomentDecomposition {
    double moment_e1_r2 = 0.0;  // mean of a^(p)^2
    double moment_e2_r1 = 0.0;  // mean of a^(p^2)
    double good_density = 0.0;
    i64 family_size = 0;
};
SquareMomentDecomposition square_moment_decomposition(i64 p, i64 x, int workers = 1);

}  // namespace ecstat
