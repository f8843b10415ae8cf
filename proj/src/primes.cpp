#include "ecstat/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace ecstat {

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<i64> primes_upto(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(n + 1), false);
    for (i64 i = 2; i <= n; ++i) {
        if (comp[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
    }
    return out;
}

int p_valuation(i64 n, i64 p) {
    if (n == 0) throw std::invalid_argument("p_valuation: n must be nonzero");
    if (p < 2) throw std::invalid_argument("p_valuation: p must be >= 2");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 icbrt(i64 n) {
    if (n < 0) throw std::invalid_argument("icbrt: negative input");
    i64 r = static_cast<i64>(std::cbrt(static_cast<double>(n)));
    while (r > 0 && r * r * r > n) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace ecstat
