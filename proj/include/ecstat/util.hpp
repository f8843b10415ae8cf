#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace ecstat {

using i64 = long long;

// Neumaier-compensated accumulator. Partial sums merge by add(sum); add(comp),
// so a fixed merge order yields bit-identical totals for any partitioning.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    void merge(const CompensatedSum& o) {
        add(o.sum);
        add(o.comp);
    }
    double value() const { return sum + comp; }
};

i64 isqrt(i64 n);  // floor(sqrt(n)), n >= 0
i64 icbrt(i64 n);  // floor(cbrt(n)), n >= 0

// Locale-independent decimal with the given significant digits.
std::string format_sig(double x, int digits = 12);

}  // namespace ecstat
