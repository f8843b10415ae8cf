#pragma once

#include <vector>

#include "ecstat/util.hpp"

namespace ecstat {

bool is_prime(i64 n);
std::vector<i64> primes_upto(i64 n);

// Largest k with p^k | n.  Rejects n == 0.
int p_valuation(i64 n, i64 p);

}  // namespace ecstat
