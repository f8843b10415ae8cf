#pragma once

#include <gmpxx.h>

#include <vector>

#include "ecstat/util.hpp"

namespace ecstat {

// Short Weierstrass curve y^2 = x^3 + a x + b with integer coefficients.
struct CurveParams {
    i64 a = 0;
    i64 b = 0;
    bool operator==(const CurveParams&) const = default;
};

// 4a^3 + 27b^2; vanishes exactly on singular cubics, and for p >= 5 carries
// the same p-adic valuation as the classical discriminant.
i64 disc_core(i64 a, i64 b);

// max(|a|^3, b^2)
i64 curve_height(const CurveParams& c);

// Condition (M): no prime q with q^4 | a and q^6 | b.  (0,0) fails.
bool satisfies_minimality(i64 a, i64 b);

// Nonsingular and (M); height is not checked here.
bool in_family(i64 a, i64 b);

constexpr i64 kMaxHeight = 1'000'000'000'000'000LL;  // keeps disc_core in i64

struct FamilyBounds {
    i64 amax = 0;  // |a| <= amax  (amax = floor(X^{1/3}))
    i64 bmax = 0;  // |b| <= bmax  (bmax = floor(X^{1/2}))
};
FamilyBounds family_bounds(i64 x);

// All members of the family with height <= x, lexicographic by (a, b).
std::vector<CurveParams> enumerate_family(i64 x);

i64 family_size(i64 x, int workers = 1);

// Main term (4/zeta(10)) x^{5/6} of the family count.
double family_main_term(i64 x);

// Local Euler factor p^10 / (p^10 - 1) common to the closed-form counts.
mpq_class euler_factor_p10(i64 p);

// Residue class (alpha, beta) mod p^m.
struct CongruenceClass {
    i64 p = 5;
    int m = 1;
    i64 alpha = 0;
    i64 beta = 0;
};

struct CongruenceCount {
    i64 count = 0;           // exact, by enumeration
    bool has_main_term = false;
    double main_term = 0.0;  // closed-form prediction where one exists
};

// Exact count of family members congruent to the class, with the closed-form
// main term: x^{5/6}-scaled 1/p^{2m} for classes with p^4 . alpha or
// p^6 . beta not both zero, and the (p^8-1)/(p^10-1) form for (0,0) mod p.
CongruenceCount count_congruence_class(const CongruenceClass& cls, i64 x, int workers = 1);

}  // namespace ecstat
