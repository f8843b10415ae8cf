#include "ecstat/rankbound.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "ecstat/rational.hpp"

namespace ecstat {

mpq_class sigma_n(int n) {
    if (n < 1) throw std::invalid_argument("sigma_n: n must be positive");
    return rat(2, 9LL * n);
}

double phi(int n, double x) {
    const double s = to_double(sigma_n(n));
    if (x == 0.0) return s * s / 4.0;
    const double num = std::sin(M_PI * s * x);
    const double den = 2.0 * M_PI * x;
    return num * num / (den * den);
}

double phi_hat(int n, double u) {
    const double s = to_double(sigma_n(n));
    const double au = std::abs(u);
    if (au > s) return 0.0;
    return 0.25 * (s - au);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double integral_identity_quadrature(int n) {
    const double s = to_double(sigma_n(n));
    auto f = [n](double u) {
        const double ph = phi_hat(n, u);
        return std::abs(u) * ph * ph;
    };
    // split at the kink
    return integrate(f, -s, 0.0, 5e-13) + integrate(f, 0.0, s, 5e-13);
}

mpq_class integral_identity_exact(int n) { return qpow(sigma_n(n), 4) / 96; }

mpq_class f_sum(int t) {
    if (t < 1) throw std::invalid_argument("f_sum: t must be positive");
    mpq_class total = 0;
    for (int k = 0; k <= t; ++k) {
        mpq_class term(binom(static_cast<unsigned long>(2 * t), static_cast<unsigned long>(2 * k)) *
                       factorial(static_cast<unsigned long>(2 * k)));
        term *= qpow(rat(1, 2), 2L * (t - k));
        term *= qpow(rat(1, 6), k);
        total += term;
    }
    return total;
}

mpq_class tail_bound(int n, const mpq_class& C) {
    if (n < 1) throw std::invalid_argument("tail_bound: n must be positive");
    if (C <= 0) throw std::invalid_argument("tail_bound: C must be positive");
    return f_sum(n) / qpow(C * rat(9LL * n), 2L * n);
}

RankBoundRow rank_cdf_lower_bound(int a) {
    if (a < 11) throw std::invalid_argument("rank_cdf_lower_bound: a must be >= 11");
    const int n = a / 9;  // bracket 9n <= a <= 9n + 8; a in [11, 17] uses n = 1
    RankBoundRow row;
    row.a = a;
    mpq_class best;
    for (int l = 1; l <= n; ++l) {
        const mpq_class term = f_sum(l) / qpow(rat(a + 1 - 9LL * l), 2L * l);
        if (l == 1 || term < best) {
            best = term;
            row.chosen_l = l;
        }
    }
    row.bound = 1 - best;
    return row;
}

mpq_class moment_bound(int n) {
    if (n < 1) throw std::invalid_argument("moment_bound: n must be positive");
    const mpq_class inv_sigma = rat(9LL * n, 2);
    mpq_class total = 0;
    for (int s = 0; s <= n; ++s) {
        mpq_class inner = 0;
        for (int k = 0; k <= s; k += 2) {
            mpq_class term(binom(static_cast<unsigned long>(s), static_cast<unsigned long>(k)) *
                           factorial(static_cast<unsigned long>(k)));
            term *= qpow(rat(1, 2), s - k);
            term *= qpow(rat(1, 6), k / 2);
            inner += term;
        }
        total += mpq_class(binom(static_cast<unsigned long>(n), static_cast<unsigned long>(s))) *
                 qpow(inv_sigma, n - s) * inner;
    }
    return total;
}

}  // namespace ecstat
