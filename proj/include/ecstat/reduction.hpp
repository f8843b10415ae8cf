#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecstat/family.hpp"

namespace ecstat {

enum class ReductionClass : uint8_t {
    Good = 0,
    MultiplicativeSplit = 1,
    MultiplicativeNonSplit = 2,
    Additive = 3,
};

inline bool is_multiplicative(ReductionClass c) {
    return c == ReductionClass::MultiplicativeSplit || c == ReductionClass::MultiplicativeNonSplit;
}
inline bool is_bad(ReductionClass c) { return c != ReductionClass::Good; }

std::string to_string(ReductionClass c);  // "good", "split", "non-split", "additive"

enum class KodairaTag : uint8_t { I0, Im, II, III, IV, I0Star, ImStar, IVStar, IIIStar, IIStar };

struct KodairaType {
    KodairaTag tag = KodairaTag::I0;
    int m = 0;  // only Im / ImStar carry m >= 1
    bool operator==(const KodairaType&) const = default;
};

std::string to_string(KodairaTag t);  // "I0", "Im", "II", ..., "Im*", "II*"
std::string kodaira_name(const KodairaType& t);  // "I3", "I2*", "IV", ...

struct ReductionReport {
    i64 p = 0;
    ReductionClass cls = ReductionClass::Good;
    int ap = 0;  // trace for good; +1 split, -1 non-split, 0 additive
    KodairaType kodaira{};
    int delta_valuation = 0;  // v_p(4a^3 + 27b^2)
};

// Serialized with fields p, class, ap, kodaira, m, vdelta.
std::string report_json(const ReductionReport& r);

// p + 1 - #E(F_p) by exhaustive point counting with a quadratic-residue
// table; requires good reduction at p.
int trace_of_frobenius(const CurveParams& c, i64 p);

// Good / split / non-split / additive.  For a multiplicative curve the node
// is at x0 = -3b (2a)^{-1} and the reduction is split iff 3 x0 is a nonzero
// square mod p.
ReductionClass reduction_class(const CurveParams& c, i64 p);

// Kodaira-Neron type from the valuation criteria on (a, b, disc); the model
// is minimal at p >= 5 under (M).
KodairaType kodaira_type(const CurveParams& c, i64 p);

// Independent route: the standard special-fiber table keyed on
// (v_p(c4), v_p(disc)) with c4 = -48a.  Pass kValuationInfinity for a == 0.
constexpr int kValuationInfinity = 1 << 20;
KodairaType kodaira_from_invariants(int vc4, int vdelta);

ReductionReport classify_curve(const CurveParams& c, i64 p);

enum class CoefKind : uint8_t { AHat, Lambda };

// a^(p) = ap/sqrt(p) good, +-1/sqrt(p) multiplicative, 0 additive;
// a^(p^2) = a^(p)^2 - 2 good / a^(p)^2 bad; lambda(p^2) = a^(p)^2 - 1 good.
double normalized_coefficient(const CurveParams& c, i64 p, int e, CoefKind kind);

// Per-prime classification of all residue pairs (a, b) mod p.  Class and
// trace depend on the curve mod p only, so family scans reduce and look up.
// Built once, read-only afterwards; safe to share across workers.
class LocalTable {
  public:
    explicit LocalTable(i64 p);

    i64 prime() const { return p_; }
    ReductionClass cls(i64 a, i64 b) const { return cls_[idx(a, b)]; }
    int ap(i64 a, i64 b) const { return ap_[idx(a, b)]; }
    double a_hat(i64 a, i64 b) const {
        size_t i = idx(a, b);
        switch (cls_[i]) {
            case ReductionClass::Good: return ap_[i] * inv_sqrt_p_;
            case ReductionClass::MultiplicativeSplit: return inv_sqrt_p_;
            case ReductionClass::MultiplicativeNonSplit: return -inv_sqrt_p_;
            default: return 0.0;
        }
    }

  private:
    size_t idx(i64 a, i64 b) const {
        i64 ra = a % p_, rb = b % p_;
        if (ra < 0) ra += p_;
        if (rb < 0) rb += p_;
        return static_cast<size_t>(ra * p_ + rb);
    }

    i64 p_;
    double inv_sqrt_p_;
    std::vector<ReductionClass> cls_;
    std::vector<int16_t> ap_;
};

}  // namespace ecstat
