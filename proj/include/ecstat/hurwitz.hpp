#pragma once

#include <gmpxx.h>

#include <vector>

#include "ecstat/util.hpp"

namespace ecstat {

// Hurwitz class number H(-d) for d > 0, -d = 0 or 1 mod 4, by enumerating
// reduced positive-definite forms ax^2 + bxy + cy^2 of discriminant -d
// (|b| <= a <= c, b >= 0 when |b| = a or a = c).  Forms proportional to
// x^2 + y^2 weigh 1/2 and to x^2 + xy + y^2 weigh 1/3.
mpq_class hurwitz_class_number(i64 d);

// Precomputed H values for batch consumers; presence never changes results.
class HurwitzTable {
  public:
    explicit HurwitzTable(i64 dmax);
    const mpq_class& operator()(i64 d) const;

  private:
    std::vector<mpq_class> values_;  // index d; invalid d hold 0
    std::vector<bool> valid_;
};

// Sum of H(4p - a^2) over |a| <= floor(2 sqrt p); equals 2p.
mpq_class hurwitz_first_moment(i64 p);

// Sum of a^2 H(4p - a^2); equals 2p^2 - 2.
mpq_class hurwitz_second_moment(i64 p);

// Sum of a^r H(4p - a^2) for odd r; vanishes by a <-> -a symmetry.
mpq_class hurwitz_odd_moment(i64 p, i64 r);

}  // namespace ecstat
