// Benchmark: serial reference scan vs the OpenMP kernel on the density /
// trace workload.  Usage: ecstat-bench [height] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "ecstat/density.hpp"
#include "ecstat/scan.hpp"
#include "ecstat/trace.hpp"

using namespace ecstat;

namespace {

struct WorkState {
    i64 family = 0;
    i64 good = 0;
    CompensatedSum moment;
    void merge(const WorkState& o) {
        family += o.family;
        good += o.good;
        moment.merge(o.moment);
    }
};

double now() {
    using Clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(Clock::now().time_since_epoch()).count();
}

}  // namespace

int main(int argc, char** argv) {
    const i64 x = argc > 1 ? std::atoll(argv[1]) : 1'000'000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    const LocalTable table(5);

    auto visit = [&](WorkState& st, i64 a, i64 b) {
        ++st.family;
        if (table.cls(a, b) == ReductionClass::Good) ++st.good;
        const double ah = table.a_hat(a, b);
        st.moment.add(ah * ah);
    };

    std::printf("height bound X = %lld, %d repeats, %d hardware threads\n", x, repeats,
                omp_get_max_threads());

    double serial_best = 1e18;
    WorkState serial{};
    for (int i = 0; i < repeats; ++i) {
        const double t0 = now();
        serial = scan_family_serial<WorkState>(x, visit);
        serial_best = std::min(serial_best, now() - t0);
    }
    std::printf("serial reference: %.3f s  (family=%lld good=%lld moment=%.6f)\n", serial_best,
                serial.family, serial.good, serial.moment.value() / serial.family);

    for (int workers : {1, 2, 4, omp_get_max_threads()}) {
        double best = 1e18;
        WorkState par{};
        for (int i = 0; i < repeats; ++i) {
            const double t0 = now();
            par = scan_family<WorkState>(x, workers, visit);
            best = std::min(best, now() - t0);
        }
        const bool same = par.family == serial.family && par.good == serial.good;
        std::printf("omp kernel (%2d workers): %.3f s  speedup %.2fx  counts %s\n", workers, best,
                    serial_best / best, same ? "match" : "MISMATCH");
    }
    return 0;
}
