#include "ecstat/density.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ecstat/hurwitz.hpp"
#include "ecstat/primes.hpp"
#include "ecstat/rational.hpp"
#include "ecstat/scan.hpp"

namespace ecstat {

namespace {

void require_prime_ge5(i64 p, const char* who) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be a prime >= 5");
}

const char* kind_name(ConditionKind k) {
    switch (k) {
        case ConditionKind::Good: return "good";
        case ConditionKind::Bad: return "bad";
        case ConditionKind::Mult: return "mult";
        case ConditionKind::Split: return "split";
        case ConditionKind::NonSplit: return "non-split";
        case ConditionKind::Additive: return "additive";
        case ConditionKind::TraceValue: return "a";
        case ConditionKind::Kodaira: return "kodaira";
    }
    return "?";
}

}  // namespace

void validate_condition(const LocalCondition& lc) {
    require_prime_ge5(lc.p, "condition");
    if (lc.kind == ConditionKind::TraceValue && lc.trace_a * lc.trace_a > 4 * lc.p)
        throw std::invalid_argument("condition: trace value outside the Weil bound");
    if (lc.kind == ConditionKind::Kodaira) {
        if ((lc.kodaira.tag == KodairaTag::Im || lc.kodaira.tag == KodairaTag::ImStar) && lc.kodaira.m < 1)
            throw std::invalid_argument("condition: Im / Im* require m >= 1");
        if (lc.kodaira.tag != KodairaTag::Im && lc.kodaira.tag != KodairaTag::ImStar && lc.kodaira.m != 0)
            throw std::invalid_argument("condition: unexpected m");
    }
}

LocalCondition parse_condition(const std::string& text) {
    const size_t at = text.rfind('@');
    if (at == std::string::npos || at == 0 || at + 1 >= text.size())
        throw std::invalid_argument("parse_condition: expected <kind>@<prime>, got '" + text + "'");
    LocalCondition lc;
    lc.p = std::stoll(text.substr(at + 1));
    const std::string kind = text.substr(0, at);
    auto starts = [&](const char* s) { return kind.rfind(s, 0) == 0; };
    auto kod = [&](KodairaTag tag, int m = 0) {
        lc.kind = ConditionKind::Kodaira;
        lc.kodaira = {tag, m};
    };
    if (kind == "good") lc.kind = ConditionKind::Good;
    else if (kind == "bad") lc.kind = ConditionKind::Bad;
    else if (kind == "mult") lc.kind = ConditionKind::Mult;
    else if (kind == "split") lc.kind = ConditionKind::Split;
    else if (kind == "non-split" || kind == "nonsplit") lc.kind = ConditionKind::NonSplit;
    else if (kind == "additive" || kind == "addi") lc.kind = ConditionKind::Additive;
    else if (starts("a=")) {
        lc.kind = ConditionKind::TraceValue;
        lc.trace_a = std::stoll(kind.substr(2));
    }
    else if (kind == "I0") kod(KodairaTag::I0);
    else if (kind == "I0*") kod(KodairaTag::I0Star);
    else if (starts("Im:")) kod(KodairaTag::Im, static_cast<int>(std::stoll(kind.substr(3))));
    else if (starts("Im*:")) kod(KodairaTag::ImStar, static_cast<int>(std::stoll(kind.substr(4))));
    else if (kind == "II") kod(KodairaTag::II);
    else if (kind == "III") kod(KodairaTag::III);
    else if (kind == "IV") kod(KodairaTag::IV);
    else if (kind == "II*") kod(KodairaTag::IIStar);
    else if (kind == "III*") kod(KodairaTag::IIIStar);
    else if (kind == "IV*") kod(KodairaTag::IVStar);
    else throw std::invalid_argument("parse_condition: unknown condition '" + kind + "'");
    validate_condition(lc);
    return lc;
}

std::string to_string(const LocalCondition& lc) {
    std::ostringstream os;
    switch (lc.kind) {
        case ConditionKind::TraceValue: os << "a=" << lc.trace_a; break;
        case ConditionKind::Kodaira:
            if (lc.kodaira.tag == KodairaTag::Im) os << "Im:" << lc.kodaira.m;
            else if (lc.kodaira.tag == KodairaTag::ImStar) os << "Im*:" << lc.kodaira.m;
            else os << to_string(lc.kodaira.tag);
            break;
        default: os << kind_name(lc.kind);
    }
    os << "@" << lc.p;
    return os.str();
}

DensityRule closed_form_density(const LocalCondition& lc) {
    validate_condition(lc);
    const i64 p = lc.p;
    const mpq_class u = euler_factor_p10(p);
    const mpq_class one_minus = rat(p - 1, p);
    auto additive_row = [&](int power, int mlc, mpq_class h) {
        return DensityRule{rat(1) / qpow(rat(p), power) * one_minus * u, mlc, std::move(h)};
    };
    switch (lc.kind) {
        case ConditionKind::Good: return {rat(p - 1, p) * u, 1, rat(p)};
        case ConditionKind::Bad: {
            mpq_class cf(zpow(p, 10) - mpz_class(static_cast<long>(p)), zpow(p, 11));
            cf.canonicalize();
            return {cf * u, 1, rat(p)};
        }
        case ConditionKind::Mult: return {rat(p - 1) / rat(p * p) * u, 1, rat(1)};
        case ConditionKind::Split:
        case ConditionKind::NonSplit: return {rat(p - 1) / rat(2 * p * p) * u, 1, rat(1)};
        case ConditionKind::Additive: {
            mpq_class cf(zpow(p, 9) - mpz_class(static_cast<long>(p)), zpow(p, 11));
            cf.canonicalize();
            return {cf * u, 1, rat(p)};
        }
        case ConditionKind::TraceValue: {
            const mpq_class h = hurwitz_class_number(4 * p - lc.trace_a * lc.trace_a);
            return {rat(p - 1) / rat(2 * p * p) * h * u, 1, h};
        }
        case ConditionKind::Kodaira: break;
    }
    const KodairaType t = lc.kodaira;
    switch (t.tag) {
        case KodairaTag::I0: return {rat(p - 1, p) * u, 1, rat(p)};
        case KodairaTag::Im:
            return {rat(1) / qpow(rat(p), t.m) * one_minus * one_minus * u, t.m + 1, rat(p)};
        case KodairaTag::II: return additive_row(2, 2, rat(1));
        case KodairaTag::III: return additive_row(3, 3, rat(1));
        case KodairaTag::IV: return additive_row(4, 4, rat(1));
        case KodairaTag::I0Star: return additive_row(5, 5, rat(p));
        case KodairaTag::IVStar: return additive_row(7, 6, rat(1, p));
        case KodairaTag::IIIStar: return additive_row(8, 5, rat(1) / rat(p * p * p));
        case KodairaTag::IIStar: return additive_row(9, 7, rat(1) / rat(p * p));
        case KodairaTag::ImStar:
            return {rat(1) / qpow(rat(p), t.m + 5) * one_minus * one_minus * u, t.m + 6, rat(p)};
    }
    throw std::logic_error("closed_form_density: unhandled condition");
}

mpq_class density_sum_Im(i64 p) {
    // sum_{m>=1} p^{-m} (1-1/p)^2 u = (p-1)/p^2 u
    return rat(p - 1) / rat(p * p) * euler_factor_p10(p);
}

mpq_class density_sum_ImStar(i64 p) {
    // sum_{m>=1} p^{-(m+5)} (1-1/p)^2 u = (p-1)/p^7 u
    mpq_class cf(mpz_class(static_cast<long>(p - 1)), zpow(p, 7));
    cf.canonicalize();
    return cf * euler_factor_p10(p);
}

mpq_class density_table_total(i64 p) {
    LocalCondition lc{p, ConditionKind::Kodaira, 0, {}};
    mpq_class total = closed_form_density({p, ConditionKind::Good, 0, {}}).closed_form;
    total += density_sum_Im(p);
    for (KodairaTag tag : {KodairaTag::II, KodairaTag::III, KodairaTag::IV, KodairaTag::I0Star,
                           KodairaTag::IVStar, KodairaTag::IIIStar, KodairaTag::IIStar}) {
        lc.kodaira = {tag, 0};
        total += closed_form_density(lc).closed_form;
    }
    total += density_sum_ImStar(p);
    return total;
}

bool condition_matches(const LocalCondition& lc, const CurveParams& c, const LocalTable& table) {
    const ReductionClass rc = table.cls(c.a, c.b);
    switch (lc.kind) {
        case ConditionKind::Good: return rc == ReductionClass::Good;
        case ConditionKind::Bad: return is_bad(rc);
        case ConditionKind::Mult: return is_multiplicative(rc);
        case ConditionKind::Split: return rc == ReductionClass::MultiplicativeSplit;
        case ConditionKind::NonSplit: return rc == ReductionClass::MultiplicativeNonSplit;
        case ConditionKind::Additive: return rc == ReductionClass::Additive;
        case ConditionKind::TraceValue:
            return rc == ReductionClass::Good && table.ap(c.a, c.b) == lc.trace_a;
        case ConditionKind::Kodaira: {
            // cheap class filter before computing valuations
            switch (lc.kodaira.tag) {
                case KodairaTag::I0: return rc == ReductionClass::Good;
                case KodairaTag::Im:
                    if (!is_multiplicative(rc)) return false;
                    break;
                default:
                    if (rc != ReductionClass::Additive) return false;
            }
            return kodaira_type(c, lc.p) == lc.kodaira;
        }
    }
    return false;
}

namespace {

struct CondCount {
    i64 family = 0;
    i64 matched = 0;
    void merge(const CondCount& o) {
        family += o.family;
        matched += o.matched;
    }
};

std::string conditions_label(const std::vector<LocalCondition>& cs) {
    std::string s;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ",";
        s += to_string(cs[i]);
    }
    return s;
}

}  // namespace

std::string DensityReport::to_json() const {
    std::ostringstream os;
    os << "{\"condition\":\"" << conditions_label(conditions) << "\"";
    if (conditions.size() == 1) {
        const DensityRule rule = closed_form_density(conditions[0]);
        os << ",\"p\":" << conditions[0].p << ",\"m\":" << rule.modulus_exponent;
    }
    os << ",\"X\":" << x << ",\"count\":" << count << ",\"family_size\":" << family_size
       << ",\"empirical\":" << format_sig(empirical)
       << ",\"closed_form\":" << format_sig(to_double(closed_form))
       << ",\"closed_form_exact\":\"" << rat_str(closed_form) << "\""
       << ",\"abs_error\":" << format_sig(abs_error) << ",\"tolerance\":" << format_sig(tolerance)
       << ",\"pass\":" << (pass ? "true" : "false")
       << ",\"range_warning\":" << (range_warning ? "true" : "false") << "}";
    return os.str();
}

std::string DensityReport::to_csv() const {
    std::ostringstream os;
    os << "condition,p,m,X,count,family_size,empirical,closed_form,abs_error,tolerance,pass\n";
    os << conditions_label(conditions) << ",";
    if (conditions.size() == 1) {
        const DensityRule rule = closed_form_density(conditions[0]);
        os << conditions[0].p << "," << rule.modulus_exponent << ",";
    } else {
        os << ",,";
    }
    os << x << "," << count << "," << family_size << "," << format_sig(empirical) << ","
       << format_sig(to_double(closed_form)) << "," << format_sig(abs_error) << ","
       << format_sig(tolerance) << "," << (pass ? "true" : "false") << "\n";
    return os.str();
}

DensityReport empirical_density(const LocalCondition& lc, i64 x, int workers) {
    const DensityRule rule = closed_form_density(lc);
    const LocalTable table(lc.p);
    const CondCount mc = scan_family<CondCount>(x, workers, [&](CondCount& st, i64 a, i64 b) {
        ++st.family;
        if (condition_matches(lc, {a, b}, table)) ++st.matched;
    });
    DensityReport rep;
    rep.conditions = {lc};
    rep.x = x;
    rep.count = mc.matched;
    rep.family_size = mc.family;
    rep.empirical = static_cast<double>(rep.count) / static_cast<double>(rep.family_size);
    rep.closed_form = rule.closed_form;
    rep.abs_error = std::abs(rep.empirical - to_double(rule.closed_form));
    const double h_term =
        5.0 * to_double(rule.h_coef) * std::sqrt(static_cast<double>(x)) / family_main_term(x);
    rep.tolerance = std::max(0.02 * to_double(rule.closed_form), h_term);
    rep.pass = rep.abs_error <= rep.tolerance;
    rep.range_warning =
        std::pow(static_cast<double>(lc.p), 3.0 * rule.modulus_exponent) > static_cast<double>(x);
    return rep;
}

DensityReport joint_density(const std::vector<LocalCondition>& lcs, i64 x, int workers) {
    std::set<i64> primes;
    for (const LocalCondition& lc : lcs) {
        validate_condition(lc);
        if (!primes.insert(lc.p).second)
            throw std::invalid_argument("joint_density: conditions must lie at distinct primes");
    }
    std::vector<LocalTable> tables;
    tables.reserve(lcs.size());
    for (const LocalCondition& lc : lcs) tables.emplace_back(lc.p);

    const CondCount mc = scan_family<CondCount>(x, workers, [&](CondCount& st, i64 a, i64 b) {
        ++st.family;
        for (size_t i = 0; i < lcs.size(); ++i)
            if (!condition_matches(lcs[i], {a, b}, tables[i])) return;
        ++st.matched;
    });

    DensityReport rep;
    rep.conditions = lcs;
    rep.x = x;
    rep.count = mc.matched;
    rep.family_size = mc.family;
    rep.empirical = static_cast<double>(rep.count) / static_cast<double>(rep.family_size);
    rep.closed_form = 1;
    // joint error scale: product over conditions of c_LC(p) (1 - p^{-10}) p^{m_LC}
    double err_coef = 1.0;
    double modprod = 1.0;
    for (const LocalCondition& lc : lcs) {
        const DensityRule rule = closed_form_density(lc);
        rep.closed_form *= rule.closed_form;
        err_coef *= to_double(rule.closed_form / euler_factor_p10(lc.p) *
                              qpow(rat(lc.p), rule.modulus_exponent));
        modprod *= std::pow(static_cast<double>(lc.p), rule.modulus_exponent);
    }
    rep.abs_error = std::abs(rep.empirical - to_double(rep.closed_form));
    const double h_term = 5.0 * err_coef * std::sqrt(static_cast<double>(x)) / family_main_term(x);
    rep.tolerance = std::max(0.03 * to_double(rep.closed_form), h_term);
    rep.pass = rep.abs_error <= rep.tolerance;
    rep.range_warning = modprod * modprod * modprod > static_cast<double>(x);
    return rep;
}

std::pair<i64, i64> verify_singular_counts(i64 p, int m) {
    require_prime_ge5(p, "verify_singular_counts");
    if (m < 0) throw std::invalid_argument("verify_singular_counts: m must be >= 0");
    // dominant loop visits p^{2m+7} pairs
    if (std::pow(static_cast<double>(p), 2.0 * m + 7.0) > 2e8)
        throw std::invalid_argument("verify_singular_counts: modulus too large to enumerate");

    i64 first = 0;
    if (m >= 1) {
        i64 mod = 1;
        for (int i = 0; i < m; ++i) mod *= p;
#pragma omp parallel for reduction(+ : first) schedule(static)
        for (i64 u = 1; u < mod; ++u) {
            if (u % p == 0) continue;
            const i64 cu = 4 * (u * u % mod) % mod * u % mod;
            for (i64 w = 1; w < mod; ++w) {
                if (w % p == 0) continue;
                if ((cu + 27 * (w * w % mod)) % mod == 0) ++first;
            }
        }
    }

    i64 second = 0;
    if (m == 0) {
        // a = p^2 u, b = p^3 w with 4u^3 + 27w^2 a unit mod p
        const i64 ulim = p * p * p * p, wlim = p * p * p;
#pragma omp parallel for reduction(+ : second) schedule(static)
        for (i64 u = 0; u < ulim; ++u) {
            const i64 ur = u % p;
            const i64 cu = 4 * ur * ur % p * ur % p;
            for (i64 w = 0; w < wlim; ++w) {
                const i64 wr = w % p;
                if ((cu + 27 * wr * wr) % p != 0) ++second;
            }
        }
    } else {
        // a = p^2 u, b = p^3 w with u, w exact units and v_p(4u^3 + 27w^2) = m
        i64 pm = 1;
        for (int i = 0; i < m; ++i) pm *= p;
        const i64 pm1 = pm * p;
        const i64 ulim = pm1 * p * p * p;  // p^{m+4}
        const i64 wlim = pm1 * p * p;      // p^{m+3}
#pragma omp parallel for reduction(+ : second) schedule(static)
        for (i64 u = 0; u < ulim; ++u) {
            if (u % p == 0) continue;
            const i64 ur = u % pm1;
            const i64 cu = 4 * (ur * ur % pm1) % pm1 * ur % pm1;
            for (i64 w = 0; w < wlim; ++w) {
                if (w % p == 0) continue;
                const i64 wr = w % pm1;
                const i64 t = (cu + 27 * (wr * wr % pm1)) % pm1;
                // v(t) == m exactly: t = 0 mod p^m but t != 0 in [0, p^{m+1})
                if (t % pm == 0 && t != 0) ++second;
            }
        }
    }
    return {first, second};
}

}  // namespace ecstat
