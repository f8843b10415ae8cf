#pragma once

#include <gmpxx.h>

#include <utility>

#include "ecstat/util.hpp"

namespace ecstat {

// sigma_n = 2 / (9n)
mpq_class sigma_n(int n);

// phi_n(x) = sin^2(pi sigma_n x) / (2 pi x)^2 with phi_n(0) = sigma_n^2 / 4.
double phi(int n, double x);

// phi^_n(u) = (sigma_n - |u|) / 4 on [-sigma_n, sigma_n], 0 outside.
double phi_hat(int n, double u);

// Adaptive-Simpson quadrature of int |u| phi^_n(u)^2 du over the support
// (absolute tolerance ~1e-12; the integrand has a kink at 0).
double integral_identity_quadrature(int n);

// Closed form sigma_n^4 / 96 of the same integral; equals phi_n(0)^2 / 6.
mpq_class integral_identity_exact(int n);

// f(t) = sum_k C(2t, 2k) (1/2)^{2t-2k} (2k)! (1/6)^k
mpq_class f_sum(int t);

// f(n) / (C 9n)^{2n}; bounds the proportion of ranks >= (1+C) 9n.
mpq_class tail_bound(int n, const mpq_class& C);

struct RankBoundRow {
    int a = 0;
    mpq_class bound;    // lower bound on P(r <= a)
    int chosen_l = 1;   // minimizer of f(l) / (a+1-9l)^{2l}
};

// 1 - min_{1<=l<=n} f(l)/(a+1-9l)^{2l} with n = floor(a/9); a >= 11.
RankBoundRow rank_cdf_lower_bound(int a);

// Upper bound on the n-th rank moment: the double subset sum evaluated by
// size, summing C(n,s) (9n/2)^{n-s} C(s,k) (1/2)^{s-k} k! (1/6)^{k/2} over
// s and even k.
mpq_class moment_bound(int n);

}  // namespace ecstat
