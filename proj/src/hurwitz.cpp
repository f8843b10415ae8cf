#include "ecstat/hurwitz.hpp"

#include <stdexcept>

#include "ecstat/primes.hpp"
#include "ecstat/rational.hpp"

namespace ecstat {

mpq_class hurwitz_class_number(i64 d) {
    if (d <= 0) throw std::invalid_argument("hurwitz_class_number: d must be positive");
    const i64 r = d % 4;  // -d mod 4 in {0, 1} <=> d mod 4 in {0, 3}
    if (r != 0 && r != 3)
        throw std::invalid_argument("hurwitz_class_number: -d must be 0 or 1 mod 4");
    i64 whole = 0, halves = 0, thirds = 0;
    for (i64 a = 1; 3 * a * a <= d; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            const i64 num = b * b + d;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;  // unreduced duplicate
            if (b == 0 && a == c)
                ++halves;  // a (x^2 + y^2)
            else if (b == a && a == c)
                ++thirds;  // a (x^2 + xy + y^2)
            else
                ++whole;
        }
    }
    return rat(6 * whole + 3 * halves + 2 * thirds, 6);
}

HurwitzTable::HurwitzTable(i64 dmax) {
    values_.resize(static_cast<size_t>(dmax + 1));
    valid_.resize(static_cast<size_t>(dmax + 1), false);
    for (i64 d = 3; d <= dmax; ++d) {
        if (d % 4 != 0 && d % 4 != 3) continue;
        values_[static_cast<size_t>(d)] = hurwitz_class_number(d);
        valid_[static_cast<size_t>(d)] = true;
    }
}

const mpq_class& HurwitzTable::operator()(i64 d) const {
    if (d < 0 || static_cast<size_t>(d) >= values_.size() || !valid_[static_cast<size_t>(d)])
        throw std::invalid_argument("HurwitzTable: d out of range or invalid");
    return values_[static_cast<size_t>(d)];
}

namespace {
mpq_class weighted_moment(i64 p, i64 r) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("hurwitz moment: p must be a prime >= 5");
    const i64 bound = isqrt(4 * p);
    mpq_class sum = 0;
    for (i64 a = -bound; a <= bound; ++a) {
        mpq_class weight = qpow(rat(a), static_cast<long>(r));
        sum += weight * hurwitz_class_number(4 * p - a * a);
    }
    return sum;
}
}  // namespace

mpq_class hurwitz_first_moment(i64 p) { return weighted_moment(p, 0); }

mpq_class hurwitz_second_moment(i64 p) { return weighted_moment(p, 2); }

mpq_class hurwitz_odd_moment(i64 p, i64 r) {
    if (r <= 0 || r % 2 == 0) throw std::invalid_argument("hurwitz_odd_moment: r must be odd positive");
    return weighted_moment(p, r);
}

}  // namespace ecstat
