#include "ecstat/trace.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ecstat/primes.hpp"
#include "ecstat/scan.hpp"

namespace ecstat {

TraceMomentSpec parse_trace_spec(const std::string& text, CoefKind kind) {
    TraceMomentSpec spec;
    spec.kind = kind;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const size_t caret = item.find('^');
        const size_t colon = item.find(':');
        if (caret == std::string::npos || colon == std::string::npos || colon < caret)
            throw std::invalid_argument("trace spec: expected p^e:r, got '" + item + "'");
        TraceFactor f;
        f.p = std::stoll(item.substr(0, caret));
        f.e = static_cast<int>(std::stoll(item.substr(caret + 1, colon - caret - 1)));
        f.r = static_cast<int>(std::stoll(item.substr(colon + 1)));
        spec.factors.push_back(f);
    }
    if (spec.factors.empty()) throw std::invalid_argument("trace spec: empty");
    std::sort(spec.factors.begin(), spec.factors.end(),
              [](const TraceFactor& a, const TraceFactor& b) { return a.p < b.p; });
    validate_trace_spec(spec);
    return spec;
}

std::string to_string(const TraceMomentSpec& spec) {
    std::ostringstream os;
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        if (i) os << ",";
        os << spec.factors[i].p << "^" << spec.factors[i].e << ":" << spec.factors[i].r;
    }
    return os.str();
}

void validate_trace_spec(const TraceMomentSpec& spec, i64 max_prime_product) {
    if (spec.factors.empty()) throw std::invalid_argument("trace spec: empty");
    std::set<i64> seen;
    i64 prod = 1;
    for (const TraceFactor& f : spec.factors) {
        if (f.p < 5 || !is_prime(f.p))
            throw std::invalid_argument("trace spec: primes must be >= 5");
        if (!seen.insert(f.p).second) throw std::invalid_argument("trace spec: repeated prime");
        if (f.e != 1 && f.e != 2) throw std::invalid_argument("trace spec: e must be 1 or 2");
        if (f.e == 1 && !(f.r == 2 || (f.r >= 1 && f.r % 2 == 1)))
            throw std::invalid_argument("trace spec: r must be odd or 2 when e = 1");
        if (f.e == 2 && f.r != 1) throw std::invalid_argument("trace spec: r must be 1 when e = 2");
        prod *= f.p;
        if (prod > max_prime_product)
            throw std::invalid_argument("trace spec: product of primes exceeds the configured cap");
    }
}

int predicted_constant(const TraceMomentSpec& spec) {
    validate_trace_spec(spec);
    if (spec.kind == CoefKind::Lambda) {
        for (const TraceFactor& f : spec.factors)
            if (!(f.e == 1 && f.r == 2)) return 0;
        return 1;
    }
    int e2_r_sum = 0;
    bool all_e1_are_squares = true;
    for (const TraceFactor& f : spec.factors) {
        if (f.e == 1 && f.r % 2 == 1) return 0;
        if (f.e == 1 && f.r != 2) all_e1_are_squares = false;
        if (f.e == 2) e2_r_sum += f.r;
    }
    if (all_e1_are_squares && e2_r_sum % 2 == 1) return -1;
    return 1;
}

namespace {

struct MomentState {
    CompensatedSum sum;
    i64 family = 0;
    void merge(const MomentState& o) {
        sum.merge(o.sum);
        family += o.family;
    }
};

double factor_value(const LocalTable& t, const TraceFactor& f, CoefKind kind, i64 a, i64 b) {
    const double a1 = t.a_hat(a, b);
    double v;
    if (f.e == 1) {
        v = a1;  // lambda(p) == a^(p)
    } else if (t.cls(a, b) == ReductionClass::Good) {
        v = kind == CoefKind::AHat ? a1 * a1 - 2.0 : a1 * a1 - 1.0;
    } else {
        v = a1 * a1;
    }
    double out = 1.0;
    for (int i = 0; i < f.r; ++i) out *= v;
    return out;
}

}  // namespace

std::string TraceMomentReport::to_json() const {
    std::ostringstream os;
    os << "{\"spec\":\"" << ecstat::to_string(spec) << "\",\"kind\":\""
       << (spec.kind == CoefKind::AHat ? "ahat" : "lambda") << "\",\"X\":" << x
       << ",\"family_size\":" << family_size << ",\"empirical\":" << format_sig(empirical)
       << ",\"predicted\":" << predicted << ",\"tolerance\":" << format_sig(tolerance)
       << ",\"pass\":" << (pass ? "true" : "false")
       << ",\"range_warning\":" << (range_warning ? "true" : "false") << "}";
    return os.str();
}

TraceMomentReport trace_moment(const TraceMomentSpec& spec, i64 x, int workers) {
    validate_trace_spec(spec);
    std::vector<LocalTable> tables;
    tables.reserve(spec.factors.size());
    for (const TraceFactor& f : spec.factors) tables.emplace_back(f.p);

    const MomentState st = scan_family<MomentState>(x, workers, [&](MomentState& s, i64 a, i64 b) {
        double prod = 1.0;
        for (size_t i = 0; i < spec.factors.size(); ++i)
            prod *= factor_value(tables[i], spec.factors[i], spec.kind, a, b);
        s.sum.add(prod);
        ++s.family;
    });

    TraceMomentReport rep;
    rep.spec = spec;
    rep.x = x;
    rep.family_size = st.family;
    rep.empirical = st.sum.value() / static_cast<double>(st.family);
    rep.predicted = predicted_constant(spec);
    // error scale of the limit: 2^r prod(p) X^{-1/3} + sum 1/p, with constant 5
    int smallest_odd_r = 0;
    double prod_p = 1.0, inv_p = 0.0;
    for (const TraceFactor& f : spec.factors) {
        if (f.r % 2 == 1 && (smallest_odd_r == 0 || f.r < smallest_odd_r)) smallest_odd_r = f.r;
        prod_p *= static_cast<double>(f.p);
        inv_p += 1.0 / static_cast<double>(f.p);
    }
    rep.tolerance = 5.0 * inv_p + 5.0 * std::pow(2.0, smallest_odd_r) * prod_p *
                                      std::pow(static_cast<double>(x), -1.0 / 3.0);
    rep.pass = std::abs(rep.empirical - rep.predicted) <= rep.tolerance;
    rep.range_warning = prod_p * prod_p * prod_p > static_cast<double>(x);
    return rep;
}

SquareMomentDecomposition square_moment_decomposition(i64 p, i64 x, int workers) {
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("square_moment_decomposition: p must be a prime >= 5");
    const LocalTable table(p);
    struct State {
        CompensatedSum m1, m2;
        i64 good = 0;
        i64 family = 0;
        void merge(const State& o) {
            m1.merge(o.m1);
            m2.merge(o.m2);
            good += o.good;
            family += o.family;
        }
    };
    const State st = scan_family<State>(x, workers, [&](State& s, i64 a, i64 b) {
        const double a1 = table.a_hat(a, b);
        const bool good = table.cls(a, b) == ReductionClass::Good;
        s.m1.add(a1 * a1);
        s.m2.add(good ? a1 * a1 - 2.0 : a1 * a1);
        s.good += good ? 1 : 0;
        ++s.family;
    });
    SquareMomentDecomposition out;
    out.family_size = st.family;
    out.moment_e1_r2 = st.m1.value() / static_cast<double>(st.family);
    out.moment_e2_r1 = st.m2.value() / static_cast<double>(st.family);
    out.good_density = static_cast<double>(st.good) / static_cast<double>(st.family);
    return out;
}

}  // namespace ecstat
