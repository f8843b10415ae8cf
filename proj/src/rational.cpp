#include "ecstat/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace ecstat {

mpq_class rat(i64 num, i64 den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

mpq_class qpow(const mpq_class& q, long e) {
    if (e < 0) throw std::invalid_argument("qpow: negative exponent");
    mpq_class r = 1;
    mpq_class base = q;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

mpz_class zpow(i64 base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_class(static_cast<long>(base)).get_mpz_t(), e);
    return r;
}

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::string rat_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string truncate_decimals(const mpq_class& q, int places) {
    mpz_class scale = zpow(10, static_cast<unsigned long>(places));
    mpz_class scaled_num = q.get_num() * scale;
    mpz_class t;
    // tdiv truncates toward zero, matching decimal truncation for either sign
    mpz_tdiv_q(t.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
    bool neg = t < 0;
    mpz_class at = abs(t);
    mpz_class ip = at / scale;
    mpz_class fp = at % scale;
    std::string frac = fp.get_str();
    frac.insert(0, static_cast<size_t>(places) - frac.size(), '0');
    return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

double to_double(const mpq_class& q) { return q.get_d(); }

std::string format_sig(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

}  // namespace ecstat
