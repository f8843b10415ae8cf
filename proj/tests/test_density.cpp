#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ecstat/density.hpp"
#include "ecstat/hurwitz.hpp"
#include "ecstat/rational.hpp"

using namespace ecstat;

namespace {
LocalCondition cond(i64 p, ConditionKind k) { return {p, k, 0, {}}; }
LocalCondition kodaira_cond(i64 p, KodairaTag tag, int m = 0) {
    return {p, ConditionKind::Kodaira, 0, {tag, m}};
}
LocalCondition trace_cond(i64 p, i64 a) { return {p, ConditionKind::TraceValue, a, {}}; }
}  // namespace

TEST_CASE("closed forms from the table") {
    const mpq_class u5 = euler_factor_p10(5);

    const DensityRule good = closed_form_density(cond(5, ConditionKind::Good));
    CHECK(good.closed_form == rat(4, 5) * u5);
    CHECK(good.modulus_exponent == 1);
    CHECK(to_double(good.closed_form) == doctest::Approx(0.8000001).epsilon(1e-7));

    const DensityRule ii_star = closed_form_density(kodaira_cond(5, KodairaTag::IIStar));
    mpq_class expect(mpz_class(4), zpow(5, 10) - 1);
    expect.canonicalize();
    CHECK(ii_star.closed_form == expect);
    CHECK(ii_star.modulus_exponent == 7);
    CHECK(to_double(ii_star.closed_form) == doctest::Approx(4.096e-7).epsilon(1e-4));

    const DensityRule im1 = closed_form_density(kodaira_cond(5, KodairaTag::Im, 1));
    CHECK(im1.closed_form == rat(16, 125) * u5);
    CHECK(im1.modulus_exponent == 2);
    CHECK(to_double(im1.closed_form) == doctest::Approx(0.128).epsilon(1e-6));

    const DensityRule a0 = closed_form_density(trace_cond(5, 0));
    CHECK(a0.closed_form == rat(4, 25) * u5);  // (p-1) H(20) / (2p^2) = 4*2/50
    CHECK(to_double(a0.closed_form) == doctest::Approx(0.16).epsilon(1e-6));

    const DensityRule addi = closed_form_density(cond(5, ConditionKind::Additive));
    CHECK(to_double(addi.closed_form) == doctest::Approx(0.04).epsilon(1e-4));

    // modulus exponents of the remaining rows
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::II)).modulus_exponent == 2);
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::III)).modulus_exponent == 3);
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::IV)).modulus_exponent == 4);
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::I0Star)).modulus_exponent == 5);
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::IVStar)).modulus_exponent == 6);
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::IIIStar)).modulus_exponent == 5);
    CHECK(closed_form_density(kodaira_cond(5, KodairaTag::ImStar, 2)).modulus_exponent == 8);
    CHECK(closed_form_density(cond(5, ConditionKind::Split)).modulus_exponent == 1);
}

TEST_CASE("condition validation") {
    CHECK_THROWS_AS(closed_form_density(cond(3, ConditionKind::Good)), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_density(cond(6, ConditionKind::Good)), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_density(trace_cond(5, 5)), std::invalid_argument);  // 25 > 20
    CHECK_THROWS_AS(closed_form_density(kodaira_cond(5, KodairaTag::Im, 0)), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_density(kodaira_cond(5, KodairaTag::ImStar, 0)), std::invalid_argument);
    CHECK_NOTHROW(closed_form_density(trace_cond(5, -4)));  // 16 <= 20
}

TEST_CASE("condition parsing round-trips") {
    for (const char* text : {"good@5", "bad@7", "mult@11", "split@5", "non-split@7", "additive@5",
                             "a=-2@7", "a=0@5", "II@5", "III*@7", "I0*@5", "Im:3@5", "Im*:2@7"}) {
        const LocalCondition lc = parse_condition(text);
        CHECK(to_string(lc) == text);
    }
    CHECK(parse_condition("nonsplit@7").kind == ConditionKind::NonSplit);
    CHECK(parse_condition("addi@5").kind == ConditionKind::Additive);
    CHECK_THROWS_AS(parse_condition("good"), std::invalid_argument);
    CHECK_THROWS_AS(parse_condition("frob@5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_condition("good@4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_condition("Im:0@5"), std::invalid_argument);
}

TEST_CASE("table rows sum to one and to each other") {
    for (i64 p : {5, 7, 11, 13}) {
        CHECK(density_table_total(p) == 1);
        const mpq_class split = closed_form_density(cond(p, ConditionKind::Split)).closed_form;
        const mpq_class nonsplit = closed_form_density(cond(p, ConditionKind::NonSplit)).closed_form;
        const mpq_class mult = closed_form_density(cond(p, ConditionKind::Mult)).closed_form;
        const mpq_class addi = closed_form_density(cond(p, ConditionKind::Additive)).closed_form;
        const mpq_class bad = closed_form_density(cond(p, ConditionKind::Bad)).closed_form;
        const mpq_class good = closed_form_density(cond(p, ConditionKind::Good)).closed_form;
        CHECK(split + nonsplit == mult);
        CHECK(mult + addi == bad);
        CHECK(good + bad == 1);
        CHECK(density_sum_Im(p) == mult);
    }
}

TEST_CASE("trace-value rows exhaust the good density") {
    for (i64 p : {5, 7, 11}) {
        mpq_class total = closed_form_density(cond(p, ConditionKind::Bad)).closed_form;
        const i64 bound = isqrt(4 * p);
        for (i64 a = -bound; a <= bound; ++a)
            total += closed_form_density(trace_cond(p, a)).closed_form;
        CHECK(total == 1);
    }
}

TEST_CASE("empirical densities at small height") {
    for (ConditionKind k : {ConditionKind::Good, ConditionKind::Mult, ConditionKind::Additive}) {
        const DensityReport rep = empirical_density(cond(5, k), 10'000, 2);
        CHECK(rep.family_size == 8630);
        CHECK(rep.pass);
        CHECK_FALSE(rep.range_warning);
    }
    const DensityReport good = empirical_density(cond(5, ConditionKind::Good), 10'000, 2);
    CHECK(good.count == 6986);
    const DensityReport bad = empirical_density(cond(5, ConditionKind::Bad), 10'000, 2);
    CHECK(good.count + bad.count == good.family_size);  // complements partition the family
}

TEST_CASE("trace-value counts partition the good curves") {
    i64 total = 0;
    for (i64 a = -4; a <= 4; ++a)
        total += empirical_density(trace_cond(5, a), 1000, 2).count;
    CHECK(total == empirical_density(cond(5, ConditionKind::Good), 1000, 2).count);
}

TEST_CASE("rare conditions warn outside the supported range") {
    const DensityReport rep = empirical_density(kodaira_cond(5, KodairaTag::IIStar), 1000, 2);
    CHECK(rep.range_warning);  // 5^{3*7} far beyond X
}

TEST_CASE("joint densities") {
    const DensityReport empty = joint_density({}, 1000, 2);
    CHECK(empty.empirical == 1.0);
    CHECK(empty.closed_form == 1);
    CHECK(empty.pass);

    CHECK_THROWS_AS(
        joint_density({cond(5, ConditionKind::Good), cond(5, ConditionKind::Bad)}, 1000, 2),
        std::invalid_argument);

    const DensityReport gg =
        joint_density({cond(5, ConditionKind::Good), cond(7, ConditionKind::Good)}, 10'000, 2);
    CHECK(gg.closed_form ==
          closed_form_density(cond(5, ConditionKind::Good)).closed_form *
              closed_form_density(cond(7, ConditionKind::Good)).closed_form);
    CHECK(gg.pass);
}

TEST_CASE("joint density equals direct intersection count") {
    // cross-check against two single scans plus an explicit double filter
    const DensityReport gg =
        joint_density({cond(5, ConditionKind::Good), cond(7, ConditionKind::Good)}, 2000, 1);
    const LocalTable t5(5), t7(7);
    i64 expected = 0;
    for (const CurveParams& c : enumerate_family(2000))
        if (t5.cls(c.a, c.b) == ReductionClass::Good && t7.cls(c.a, c.b) == ReductionClass::Good)
            ++expected;
    CHECK(gg.count == expected);
}

TEST_CASE("report serialization carries the named fields") {
    const DensityReport rep = empirical_density(cond(5, ConditionKind::Good), 1000, 1);
    const std::string json = rep.to_json();
    for (const char* field : {"\"condition\":\"good@5\"", "\"p\":5", "\"m\":1", "\"X\":1000",
                              "\"count\":", "\"family_size\":", "\"empirical\":", "\"closed_form\":",
                              "\"closed_form_exact\":", "\"abs_error\":", "\"tolerance\":", "\"pass\":"})
        CHECK(json.find(field) != std::string::npos);
    const std::string csv = rep.to_csv();
    CHECK(csv.find("condition,p,m,X,count,family_size,empirical,closed_form,abs_error,tolerance,pass") !=
          std::string::npos);
}

namespace {
// number of residues mod p^m with the given exact (or at-least) valuation,
// by exhaustive valuation enumeration
struct ValuationHistogram {
    std::vector<i64> exact;  // exact[v], v capped at m
    explicit ValuationHistogram(i64 p, int m) {
        i64 mod = 1;
        for (int i = 0; i < m; ++i) mod *= p;
        exact.assign(m + 1, 0);
        for (i64 x = 0; x < mod; ++x) {
            int v = 0;
            i64 t = x;
            while (v < m && t != 0 && t % p == 0) {
                t /= p;
                ++v;
            }
            ++exact[x == 0 ? m : v];
        }
    }
    i64 at_least(int v) const {
        i64 n = 0;
        for (size_t i = v; i < exact.size(); ++i) n += exact[i];
        return n;
    }
};
}  // namespace

TEST_CASE("tiny Kodaira rows equal exact congruence-class frequencies") {
    // the additive rows are congruence conditions mod p^{m_LC}; counting the
    // matching residue classes checks them without waiting for rare curves
    for (i64 p : {5, 7}) {
        const mpq_class u = euler_factor_p10(p);
        struct Pattern {
            KodairaTag tag;
            int va_min;      // required v(alpha), exact if va_exact
            bool va_exact;
            int vb_min;
            bool vb_exact;
        };
        const std::vector<Pattern> patterns = {
            {KodairaTag::II, 1, false, 1, true},
            {KodairaTag::III, 1, true, 2, false},
            {KodairaTag::IV, 2, false, 2, true},
            {KodairaTag::IVStar, 3, false, 4, true},
            {KodairaTag::IIIStar, 3, true, 5, false},
            {KodairaTag::IIStar, 4, false, 5, true},
        };
        for (const Pattern& pat : patterns) {
            const DensityRule rule = closed_form_density(kodaira_cond(p, pat.tag));
            const int m = rule.modulus_exponent;
            const ValuationHistogram hist(p, m);
            const i64 na = pat.va_exact ? hist.exact[pat.va_min] : hist.at_least(pat.va_min);
            const i64 nb = pat.vb_exact ? hist.exact[pat.vb_min] : hist.at_least(pat.vb_min);
            mpq_class freq(mpz_class(static_cast<long>(na)) * mpz_class(static_cast<long>(nb)),
                           zpow(p, 2UL * m));
            freq.canonicalize();
            CHECK(freq * u == rule.closed_form);
        }
        // I0*: alpha = p^2 u, beta = p^3 w with 4u^3 + 27w^2 a unit mod p,
        // a joint condition mod p^5
        {
            i64 matching = 0;
            const i64 ulim = p * p * p, wlim = p * p;
            for (i64 uu = 0; uu < ulim; ++uu)
                for (i64 w = 0; w < wlim; ++w)
                    if ((4 * (uu % p) * (uu % p) % p * (uu % p) + 27 * (w % p) * (w % p)) % p != 0)
                        ++matching;
            mpq_class freq(mpz_class(static_cast<long>(matching)), zpow(p, 10));
            freq.canonicalize();
            CHECK(freq * u == closed_form_density(kodaira_cond(p, KodairaTag::I0Star)).closed_form);
        }
        // Im rows: multiplicative classes mod p^{m+1} with disc valuation m
        for (int m : {1, 2}) {
            i64 mod = 1;
            for (int i = 0; i <= m; ++i) mod *= p;
            i64 matching = 0;
            for (i64 alpha = 0; alpha < mod; ++alpha) {
                if (alpha % p == 0) continue;
                for (i64 beta = 0; beta < mod; ++beta) {
                    const i64 t = (4 * (alpha * alpha % mod) % mod * alpha + 27 * (beta * beta % mod)) % mod;
                    if (t == 0) continue;  // valuation at least m + 1
                    int v = 0;
                    i64 s = t;
                    while (s % p == 0) {
                        s /= p;
                        ++v;
                    }
                    if (v == m) ++matching;
                }
            }
            mpq_class freq(mpz_class(static_cast<long>(matching)), zpow(p, 2UL * (m + 1)));
            freq.canonicalize();
            CHECK(freq * u == closed_form_density(kodaira_cond(p, KodairaTag::Im, m)).closed_form);
        }
    }
}

TEST_CASE("singular-pair counts match the closed forms") {
    auto [f0, s0] = verify_singular_counts(5, 0);
    CHECK(f0 == 0);
    CHECK(s0 == 62500);  // 5^6 * 4

    auto [f1, s1] = verify_singular_counts(5, 1);
    CHECK(f1 == 4);        // 5^0 * 4
    CHECK(s1 == 250000);   // 5^6 * 16

    auto [f2, s2] = verify_singular_counts(5, 2);
    CHECK(f2 == 20);       // 5^1 * 4
    CHECK(s2 == 1250000);  // 5^7 * 16

    auto [f7, s7] = verify_singular_counts(7, 1);
    CHECK(f7 == 6);
    CHECK(s7 == 4235364);  // 7^6 * 36

    CHECK_THROWS_AS(verify_singular_counts(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(verify_singular_counts(5, -1), std::invalid_argument);
    CHECK_THROWS_AS(verify_singular_counts(7, 3), std::invalid_argument);  // 7^13 pairs
}
