#include "ecstat/family.hpp"

#include <cmath>
#include <stdexcept>

#include "ecstat/primes.hpp"
#include "ecstat/rational.hpp"
#include "ecstat/scan.hpp"

namespace ecstat {

i64 disc_core(i64 a, i64 b) { return 4 * a * a * a + 27 * b * b; }

i64 curve_height(const CurveParams& c) {
    i64 aa = c.a < 0 ? -c.a : c.a;
    i64 ha = aa * aa * aa;
    i64 hb = c.b * c.b;
    return ha > hb ? ha : hb;
}

bool satisfies_minimality(i64 a, i64 b) {
    if (a == 0 && b == 0) return false;
    i64 aa = a < 0 ? -a : a;
    i64 ab = b < 0 ? -b : b;
    if (a == 0) {
        // every q^4 divides 0; (M) fails iff some q^6 | b
        for (i64 q = 2; q * q * q * q * q * q <= ab; ++q) {
            if (!is_prime(q)) continue;
            i64 q6 = q * q * q * q * q * q;
            if (ab % q6 == 0) return false;
        }
        return true;
    }
    for (i64 q = 2; q * q * q * q <= aa; ++q) {
        if (!is_prime(q)) continue;
        i64 q4 = q * q * q * q;
        if (aa % q4 != 0) continue;
        if (b == 0) return false;  // q^6 | 0
        i64 q6 = q4 * q * q;
        if (q6 <= ab && ab % q6 == 0) return false;
    }
    return true;
}

bool in_family(i64 a, i64 b) { return disc_core(a, b) != 0 && satisfies_minimality(a, b); }

FamilyBounds family_bounds(i64 x) {
    if (x < 1) throw std::invalid_argument("family_bounds: height bound must be >= 1");
    if (x > kMaxHeight) throw std::invalid_argument("family_bounds: height bound too large");
    return {icbrt(x), isqrt(x)};
}

std::vector<CurveParams> enumerate_family(i64 x) {
    const FamilyBounds fb = family_bounds(x);
    std::vector<CurveParams> out;
    for (i64 a = -fb.amax; a <= fb.amax; ++a)
        for (i64 b = -fb.bmax; b <= fb.bmax; ++b)
            if (in_family(a, b)) out.push_back({a, b});
    return out;
}

namespace {
struct Counter {
    i64 n = 0;
    void merge(const Counter& o) { n += o.n; }
};
}  // namespace

i64 family_size(i64 x, int workers) {
    return scan_family<Counter>(x, workers, [](Counter& st, i64, i64) { ++st.n; }).n;
}

double family_main_term(i64 x) {
    const double zeta10 = std::pow(M_PI, 10) / 93555.0;
    return 4.0 / zeta10 * std::pow(static_cast<double>(x), 5.0 / 6.0);
}

mpq_class euler_factor_p10(i64 p) {
    mpz_class p10 = zpow(p, 10);
    mpq_class q(p10, p10 - 1);
    q.canonicalize();
    return q;
}

CongruenceCount count_congruence_class(const CongruenceClass& cls, i64 x, int workers) {
    if (cls.p < 5 || !is_prime(cls.p))
        throw std::invalid_argument("count_congruence_class: p must be a prime >= 5");
    if (cls.m < 1) throw std::invalid_argument("count_congruence_class: m must be >= 1");
    i64 mod = 1;
    for (int i = 0; i < cls.m; ++i) {
        mod *= cls.p;
        if (mod > (1LL << 30)) throw std::invalid_argument("count_congruence_class: modulus too large");
    }
    if (cls.alpha < 0 || cls.alpha >= mod || cls.beta < 0 || cls.beta >= mod)
        throw std::invalid_argument("count_congruence_class: residues out of range");

    const i64 alpha = cls.alpha, beta = cls.beta;
    Counter total = scan_family<Counter>(x, workers, [&](Counter& st, i64 a, i64 b) {
        if (((a % mod) + mod) % mod == alpha && ((b % mod) + mod) % mod == beta) ++st.n;
    });

    CongruenceCount out;
    out.count = total.n;
    // "p^4 | alpha" inside Z/p^m means alpha lies in p^4 Z/p^m Z
    const i64 p4 = cls.p * cls.p * cls.p * cls.p;
    const i64 p6 = p4 * cls.p * cls.p;
    const bool div4 = cls.m <= 4 ? alpha == 0 : alpha % p4 == 0;
    const bool div6 = cls.m <= 6 ? beta == 0 : beta % p6 == 0;
    if (!(div4 && div6)) {
        out.has_main_term = true;
        mpq_class cf = rat(1, mod) * rat(1, mod) * euler_factor_p10(cls.p);
        out.main_term = to_double(cf) * family_main_term(x);
    } else if (cls.m == 1) {
        // the (0,0) mod p class has its own main term
        mpq_class q(zpow(cls.p, 8) - 1, zpow(cls.p, 10) - 1);
        q.canonicalize();
        out.has_main_term = true;
        out.main_term = to_double(q) * family_main_term(x);
    }
    return out;
}

}  // namespace ecstat
