#pragma once

#include <omp.h>

#include <utility>
#include <vector>

#include "ecstat/family.hpp"

namespace ecstat {

// Scans the family of height <= x in lexicographic (a, b) order and feeds each
// member to `visit(state, a, b)`.
//
// The OpenMP kernel gives each a-column its own State and merges the column
// states in ascending-a order afterwards, so the result is independent of the
// worker count and of the schedule: integer counters merge exactly, and
// compensated float sums merge in a fixed order.  scan_family_serial is the
// plain reference loop kept for testing and benchmarking.

template <class State, class Visit>
State scan_family_serial(i64 x, Visit&& visit) {
    const FamilyBounds fb = family_bounds(x);
    State st{};
    for (i64 a = -fb.amax; a <= fb.amax; ++a)
        for (i64 b = -fb.bmax; b <= fb.bmax; ++b)
            if (in_family(a, b)) visit(st, a, b);
    return st;
}

template <class State, class Visit>
State scan_family(i64 x, int workers, Visit&& visit) {
    const FamilyBounds fb = family_bounds(x);
    const int ncols = static_cast<int>(2 * fb.amax + 1);
    if (workers <= 0) workers = omp_get_max_threads();
    std::vector<State> cols(static_cast<size_t>(ncols));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < ncols; ++i) {
        const i64 a = -fb.amax + i;
        State st{};  // column-local accumulation, written back once
        for (i64 b = -fb.bmax; b <= fb.bmax; ++b)
            if (in_family(a, b)) visit(st, a, b);
        cols[static_cast<size_t>(i)] = std::move(st);
    }
    State total{};
    for (State& st : cols) total.merge(st);
    return total;
}

}  // namespace ecstat
