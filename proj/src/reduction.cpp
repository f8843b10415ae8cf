#include "ecstat/reduction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ecstat/primes.hpp"

namespace ecstat {

namespace {

void require_prime_ge5(i64 p, const char* who) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be a prime >= 5");
}

constexpr i64 kMaxPointCountPrime = 1'000'000;

// chi[t] = Legendre symbol (t/p), built by marking squares.
std::vector<int8_t> residue_table(i64 p) {
    std::vector<int8_t> chi(static_cast<size_t>(p), -1);
    chi[0] = 0;
    for (i64 x = 1; x < p; ++x) chi[static_cast<size_t>(x * x % p)] = 1;
    return chi;
}

i64 mod_inverse(i64 a, i64 p) {
    i64 t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
    while (newr != 0) {
        i64 q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    return ((t % p) + p) % p;
}

}  // namespace

std::string to_string(ReductionClass c) {
    switch (c) {
        case ReductionClass::Good: return "good";
        case ReductionClass::MultiplicativeSplit: return "split";
        case ReductionClass::MultiplicativeNonSplit: return "non-split";
        case ReductionClass::Additive: return "additive";
    }
    return "?";
}

std::string to_string(KodairaTag t) {
    switch (t) {
        case KodairaTag::I0: return "I0";
        case KodairaTag::Im: return "Im";
        case KodairaTag::II: return "II";
        case KodairaTag::III: return "III";
        case KodairaTag::IV: return "IV";
        case KodairaTag::I0Star: return "I0*";
        case KodairaTag::ImStar: return "Im*";
        case KodairaTag::IVStar: return "IV*";
        case KodairaTag::IIIStar: return "III*";
        case KodairaTag::IIStar: return "II*";
    }
    return "?";
}

std::string kodaira_name(const KodairaType& t) {
    if (t.tag == KodairaTag::Im) return "I" + std::to_string(t.m);
    if (t.tag == KodairaTag::ImStar) return "I" + std::to_string(t.m) + "*";
    return to_string(t.tag);
}

std::string report_json(const ReductionReport& r) {
    std::ostringstream os;
    os << "{\"p\":" << r.p << ",\"class\":\"" << to_string(r.cls) << "\",\"ap\":" << r.ap
       << ",\"kodaira\":\"" << to_string(r.kodaira.tag) << "\",\"m\":" << r.kodaira.m
       << ",\"vdelta\":" << r.delta_valuation << "}";
    return os.str();
}

int trace_of_frobenius(const CurveParams& c, i64 p) {
    require_prime_ge5(p, "trace_of_frobenius");
    if (p > kMaxPointCountPrime) throw std::invalid_argument("trace_of_frobenius: prime too large");
    const i64 a = ((c.a % p) + p) % p;
    const i64 b = ((c.b % p) + p) % p;
    if (disc_core(a, b) % p == 0)
        throw std::invalid_argument("trace_of_frobenius: curve has bad reduction at p");
    const std::vector<int8_t> chi = residue_table(p);
    i64 s = 0;
    for (i64 x = 0; x < p; ++x) s += chi[static_cast<size_t>(((x * x % p) * x + a * x + b) % p)];
    return static_cast<int>(-s);
}

ReductionClass reduction_class(const CurveParams& c, i64 p) {
    require_prime_ge5(p, "reduction_class");
    const i64 a = ((c.a % p) + p) % p;
    const i64 b = ((c.b % p) + p) % p;
    if (disc_core(a, b) % p != 0) return ReductionClass::Good;
    if (a == 0) return ReductionClass::Additive;
    const i64 x0 = (p - 3) * b % p * mod_inverse(2 * a, p) % p;
    const i64 t = 3 * x0 % p;
    if (t == 0) return ReductionClass::Additive;  // unreachable for p >= 5
    const std::vector<int8_t> chi = residue_table(p);
    return chi[static_cast<size_t>(t)] == 1 ? ReductionClass::MultiplicativeSplit
                                            : ReductionClass::MultiplicativeNonSplit;
}

KodairaType kodaira_type(const CurveParams& c, i64 p) {
    require_prime_ge5(p, "kodaira_type");
    const i64 d = disc_core(c.a, c.b);
    if (d == 0) throw std::invalid_argument("kodaira_type: singular curve");
    const int vd = p_valuation(d, p);
    if (vd == 0) return {KodairaTag::I0, 0};
    const int va = c.a == 0 ? kValuationInfinity : p_valuation(c.a, p);
    const int vb = c.b == 0 ? kValuationInfinity : p_valuation(c.b, p);
    if (va == 0) return {KodairaTag::Im, vd};  // multiplicative
    // additive: p | a and p | b from here on
    if (vb == 1) return {KodairaTag::II, 0};
    if (va == 1 && vb >= 2) return {KodairaTag::III, 0};
    if (va >= 2 && vb == 2) return {KodairaTag::IV, 0};
    if (va >= 2 && vb >= 3 && (va == 2 || vb == 3)) {
        const i64 p2 = p * p, p3 = p2 * p;
        const i64 rescaled = disc_core(c.a / p2, c.b / p3);
        const int m = p_valuation(rescaled, p);  // rescaled != 0 since d != 0
        if (m == 0) return {KodairaTag::I0Star, 0};
        return {KodairaTag::ImStar, m};
    }
    if (va >= 3 && vb == 4) return {KodairaTag::IVStar, 0};
    if (va == 3 && vb >= 5) return {KodairaTag::IIIStar, 0};
    if (va >= 4 && vb == 5) return {KodairaTag::IIStar, 0};
    throw std::logic_error("kodaira_type: no criterion matched (model not minimal at p?)");
}

KodairaType kodaira_from_invariants(int vc4, int vdelta) {
    if (vdelta == 0) return {KodairaTag::I0, 0};
    if (vc4 == 0) return {KodairaTag::Im, vdelta};
    if (vdelta == 2) return {KodairaTag::II, 0};
    if (vdelta == 3) return {KodairaTag::III, 0};
    if (vdelta == 4) return {KodairaTag::IV, 0};
    if (vdelta == 6) return {KodairaTag::I0Star, 0};
    if (vc4 == 2 && vdelta >= 7) return {KodairaTag::ImStar, vdelta - 6};
    if (vdelta == 8) return {KodairaTag::IVStar, 0};
    if (vdelta == 9) return {KodairaTag::IIIStar, 0};
    if (vdelta == 10) return {KodairaTag::IIStar, 0};
    throw std::logic_error("kodaira_from_invariants: invalid (v(c4), v(delta)) pair");
}

ReductionReport classify_curve(const CurveParams& c, i64 p) {
    require_prime_ge5(p, "classify_curve");
    const i64 d = disc_core(c.a, c.b);
    if (d == 0) throw std::invalid_argument("classify_curve: singular curve");
    ReductionReport r;
    r.p = p;
    r.delta_valuation = p_valuation(d, p);
    r.cls = reduction_class(c, p);
    r.kodaira = kodaira_type(c, p);
    switch (r.cls) {
        case ReductionClass::Good: r.ap = trace_of_frobenius(c, p); break;
        case ReductionClass::MultiplicativeSplit: r.ap = 1; break;
        case ReductionClass::MultiplicativeNonSplit: r.ap = -1; break;
        case ReductionClass::Additive: r.ap = 0; break;
    }
    return r;
}

double normalized_coefficient(const CurveParams& c, i64 p, int e, CoefKind kind) {
    if (e != 1 && e != 2) throw std::invalid_argument("normalized_coefficient: e must be 1 or 2");
    require_prime_ge5(p, "normalized_coefficient");
    const ReductionClass rc = reduction_class(c, p);
    double a1;
    switch (rc) {
        case ReductionClass::Good: a1 = trace_of_frobenius(c, p) / std::sqrt(static_cast<double>(p)); break;
        case ReductionClass::MultiplicativeSplit: a1 = 1.0 / std::sqrt(static_cast<double>(p)); break;
        case ReductionClass::MultiplicativeNonSplit: a1 = -1.0 / std::sqrt(static_cast<double>(p)); break;
        default: a1 = 0.0;
    }
    if (e == 1) return a1;  // lambda(p) == a^(p)
    const bool good = rc == ReductionClass::Good;
    if (kind == CoefKind::AHat) return good ? a1 * a1 - 2.0 : a1 * a1;
    return good ? a1 * a1 - 1.0 : a1 * a1;
}

LocalTable::LocalTable(i64 p) : p_(p), inv_sqrt_p_(1.0 / std::sqrt(static_cast<double>(p))) {
    require_prime_ge5(p, "LocalTable");
    constexpr i64 kMaxTablePrime = 2048;  // table build is O(p^3)
    if (p > kMaxTablePrime) throw std::invalid_argument("LocalTable: prime too large for batch table");
    const std::vector<int8_t> chi = residue_table(p);
    cls_.resize(static_cast<size_t>(p * p));
    ap_.resize(static_cast<size_t>(p * p));
#pragma omp parallel for schedule(dynamic)
    for (i64 a = 0; a < p; ++a) {
        std::vector<i64> cubic(static_cast<size_t>(p));
        for (i64 x = 0; x < p; ++x) cubic[static_cast<size_t>(x)] = ((x * x % p) * x + a * x) % p;
        for (i64 b = 0; b < p; ++b) {
            const size_t i = static_cast<size_t>(a * p + b);
            if (disc_core(a, b) % p != 0) {
                cls_[i] = ReductionClass::Good;
                i64 s = 0;
                for (i64 x = 0; x < p; ++x) s += chi[static_cast<size_t>((cubic[static_cast<size_t>(x)] + b) % p)];
                ap_[i] = static_cast<int16_t>(-s);
            } else if (a == 0) {
                cls_[i] = ReductionClass::Additive;
                ap_[i] = 0;
            } else {
                const i64 x0 = (p - 3) * b % p * mod_inverse(2 * a, p) % p;
                const bool split = chi[static_cast<size_t>(3 * x0 % p)] == 1;
                cls_[i] = split ? ReductionClass::MultiplicativeSplit : ReductionClass::MultiplicativeNonSplit;
                ap_[i] = split ? 1 : -1;
            }
        }
    }
}

}  // namespace ecstat
