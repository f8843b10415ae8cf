#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecstat/reduction.hpp"

namespace ecstat {

enum class ConditionKind : uint8_t {
    Good,
    Bad,
    Mult,
    Split,
    NonSplit,
    Additive,
    TraceValue,
    Kodaira,
};

struct LocalCondition {
    i64 p = 5;
    ConditionKind kind = ConditionKind::Good;
    i64 trace_a = 0;        // TraceValue only
    KodairaType kodaira{};  // Kodaira only
};

// Grammar: good@5, bad@5, mult@5, split@5, non-split@7, additive@5, a=-2@5,
// II@5, III*@7, I0*@5, Im:3@5, Im*:2@7.
LocalCondition parse_condition(const std::string& text);
std::string to_string(const LocalCondition& lc);

// Throws std::invalid_argument on malformed conditions (p not a prime >= 5,
// trace outside the Weil bound, missing m on Im / Im*).
void validate_condition(const LocalCondition& lc);

// Closed-form density c_LC(p), the modulus exponent m_LC, and the coefficient
// of the X^{1/2} error scale h_LC,p.
struct DensityRule {
    mpq_class closed_form;
    int modulus_exponent = 1;
    mpq_class h_coef;
};
DensityRule closed_form_density(const LocalCondition& lc);

// Exact sums of the geometric tails, for the table identities.
mpq_class density_sum_Im(i64 p);      // sum over m >= 1 of the Im row
mpq_class density_sum_ImStar(i64 p);  // sum over m >= 1 of the Im* row
mpq_class density_table_total(i64 p);

bool condition_matches(const LocalCondition& lc, const CurveParams& c, const LocalTable& table);

struct DensityReport {
    std::vector<LocalCondition> conditions;
    i64 x = 0;
    i64 count = 0;
    i64 family_size = 0;
    double empirical = 0.0;
    mpq_class closed_form;
    double abs_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool range_warning = false;  // p beyond X^{1/(3 m_LC)}
    std::string to_json() const;
    std::string to_csv() const;  // header + one row
};

// Classifies every family member at lc.p and compares the frequency against
// the closed form.  Warns (does not fail) when p exceeds X^{1/(3 m_LC)}.
DensityReport empirical_density(const LocalCondition& lc, i64 x, int workers = 1);

// Joint frequency of conditions at pairwise distinct primes versus the
// product of closed forms.
DensityReport joint_density(const std::vector<LocalCondition>& lcs, i64 x, int workers = 1);

// Exhaustive counts behind the multiplicative / I_m* rows:
//  first  — unit pairs (u, w) mod p^m with 4u^3 + 27w^2 = 0 mod p^m,
//           equal to p^{m-1}(p-1)  (m >= 1; reported 0 for m = 0);
//  second — pairs mod p^{m+6} with v(a) = 2, v(b) = 3 and rescaled
//           discriminant valuation exactly m, equal to p^{m+5}(p-1)^2 for
//           m >= 1, and the m = 0 set (unit rescaled discriminant) of size
//           p^6 (p-1).
std::pair<i64, i64> verify_singular_counts(i64 p, int m);

}  // namespace ecstat
