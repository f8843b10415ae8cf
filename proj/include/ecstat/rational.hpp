#pragma once

#include <gmpxx.h>

#include <string>

#include "ecstat/util.hpp"

namespace ecstat {

// Canonicalized rational from 64-bit parts.
mpq_class rat(i64 num, i64 den = 1);

mpq_class qpow(const mpq_class& q, long e);  // e >= 0
mpz_class zpow(i64 base, unsigned long e);
mpz_class binom(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

std::string rat_str(const mpq_class& q);  // "num/den", canonical

// Decimal expansion truncated toward zero to `places` digits, e.g. 0.935185.
std::string truncate_decimals(const mpq_class& q, int places);

double to_double(const mpq_class& q);

}  // namespace ecstat
