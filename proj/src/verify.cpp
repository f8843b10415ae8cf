#include "ecstat/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "ecstat/density.hpp"
#include "ecstat/family.hpp"
#include "ecstat/hurwitz.hpp"
#include "ecstat/primes.hpp"
#include "ecstat/rankbound.hpp"
#include "ecstat/rational.hpp"
#include "ecstat/reduction.hpp"
#include "ecstat/trace.hpp"

namespace ecstat {

namespace {

using Clock = std::chrono::steady_clock;

class Battery {
  public:
    explicit Battery(VerifySummary& out) : out_(out) {}

    template <class Fn>
    void run(int criterion, const std::string& name, double time_limit_s, Fn&& fn) {
        CheckResult r;
        r.criterion = criterion;
        r.name = name;
        const auto t0 = Clock::now();
        std::ostringstream detail;
        bool ok = true;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail << " exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (time_limit_s > 0 && r.seconds > time_limit_s) {
            ok = false;
            detail << " [exceeded " << time_limit_s << "s time limit]";
        }
        r.pass = ok;
        r.detail = detail.str();
        out_.all_pass = out_.all_pass && ok;
        out_.checks.push_back(std::move(r));
    }

  private:
    VerifySummary& out_;
};

// The twenty tabulated (a, bound) pairs, six decimals truncated toward zero.
const std::map<int, std::string> kCdfTable = {
    {11, "0.935185"}, {12, "0.963541"}, {13, "0.976666"}, {14, "0.983796"}, {15, "0.988095"},
    {16, "0.990885"}, {17, "0.992798"}, {18, "0.994166"}, {19, "0.995179"}, {20, "0.995949"},
    {21, "0.996548"}, {22, "0.998033"}, {23, "0.999051"}, {24, "0.999488"}, {25, "0.999699"},
    {26, "0.999812"}, {27, "0.999877"}, {28, "0.999916"}, {34, "0.999985"}, {35, "0.999988"},
};

bool check_rank_table(std::ostringstream& d) {
    bool ok = true;
    for (const auto& [a, expected] : kCdfTable) {
        const RankBoundRow row = rank_cdf_lower_bound(a);
        const std::string got = truncate_decimals(row.bound, 6);
        if (got != expected) {
            ok = false;
            d << " a=" << a << " got " << got << " want " << expected << ";";
        }
    }
    if (ok) d << "all " << kCdfTable.size() << " tabulated bounds reproduced";
    return ok;
}

bool check_moment_bounds(std::ostringstream& d) {
    const mpq_class m2 = moment_bound(2);
    const mpq_class m3 = moment_bound(3);
    const bool ok2 = m2 == rat(1087, 12) && std::abs(to_double(m2) - 90.584) <= 0.001;
    const bool ok3 = m3 == 2758;
    d << "n=2: " << rat_str(m2) << " n=3: " << rat_str(m3);
    return ok2 && ok3;
}

bool check_class_number_identities(std::ostringstream& d) {
    int checked = 0;
    for (i64 p : primes_upto(200)) {
        if (p < 5) continue;
        if (hurwitz_first_moment(p) != rat(2 * p)) {
            d << " first moment failed at p=" << p;
            return false;
        }
        if (hurwitz_second_moment(p) != rat(2 * p * p - 2)) {
            d << " second moment failed at p=" << p;
            return false;
        }
        if (hurwitz_odd_moment(p, 1) != 0 || hurwitz_odd_moment(p, 3) != 0) {
            d << " odd moment failed at p=" << p;
            return false;
        }
        ++checked;
    }
    d << checked << " primes 5..200, both moments exact, odd moments vanish";
    return true;
}

bool check_trace_count_identity(std::ostringstream& d) {
    for (i64 p : {5, 7, 11, 13, 17, 19, 23}) {
        const LocalTable table(p);
        std::map<int, i64> hist;
        i64 good_total = 0;
        for (i64 a = 0; a < p; ++a)
            for (i64 b = 0; b < p; ++b)
                if (table.cls(a, b) == ReductionClass::Good) {
                    ++hist[table.ap(a, b)];
                    ++good_total;
                }
        const i64 bound = isqrt(4 * p);
        for (i64 a = -bound; a <= bound; ++a) {
            const mpq_class expected = rat(p - 1, 2) * hurwitz_class_number(4 * p - a * a);
            if (rat(hist[static_cast<int>(a)]) != expected) {
                d << " p=" << p << " a=" << a << " count " << hist[static_cast<int>(a)]
                  << " != " << rat_str(expected);
                return false;
            }
        }
        if (good_total != p * p - p) {
            d << " p=" << p << " good total " << good_total;
            return false;
        }
    }
    d << "trace histograms match (p-1)/2 H(4p-a^2) for p in {5..23}";
    return true;
}

bool check_kodaira_oracle(std::ostringstream& d) {
    const std::vector<CurveParams> fam = enumerate_family(10'000);
    i64 mismatches = 0, checked = 0;
    for (const CurveParams& c : fam) {
        for (i64 p : {5, 7, 11, 13}) {
            const KodairaType criteria_route = kodaira_type(c, p);
            const int vd = p_valuation(disc_core(c.a, c.b), p);
            const int vc4 = c.a == 0 ? kValuationInfinity : p_valuation(c.a, p);
            const KodairaType table_route = kodaira_from_invariants(vc4, vd);
            if (!(criteria_route == table_route)) ++mismatches;
            ++checked;
        }
    }
    d << checked << " classifications, " << mismatches << " mismatches";
    return mismatches == 0;
}

bool check_density_table_sums(std::ostringstream& d, const std::vector<i64>& primes) {
    for (i64 p : primes) {
        if (density_table_total(p) != 1) {
            d << " table sum != 1 at p=" << p;
            return false;
        }
        const mpq_class split = closed_form_density({p, ConditionKind::Split, 0, {}}).closed_form;
        const mpq_class nonsplit = closed_form_density({p, ConditionKind::NonSplit, 0, {}}).closed_form;
        const mpq_class mult = closed_form_density({p, ConditionKind::Mult, 0, {}}).closed_form;
        const mpq_class addi = closed_form_density({p, ConditionKind::Additive, 0, {}}).closed_form;
        const mpq_class bad = closed_form_density({p, ConditionKind::Bad, 0, {}}).closed_form;
        if (split + nonsplit != mult || mult + addi != bad) {
            d << " split/mult/bad identities failed at p=" << p;
            return false;
        }
    }
    d << "table sums to 1 and split+non-split=mult, mult+additive=bad at p in {";
    for (size_t i = 0; i < primes.size(); ++i) d << (i ? "," : "") << primes[i];
    d << "}";
    return true;
}

bool check_empirical_densities(std::ostringstream& d, const RunConfig& cfg) {
    const i64 p = cfg.primes.front();
    std::vector<LocalCondition> conds = {
        {p, ConditionKind::Good, 0, {}},
        {p, ConditionKind::Mult, 0, {}},
        {p, ConditionKind::Split, 0, {}},
        {p, ConditionKind::NonSplit, 0, {}},
        {p, ConditionKind::Additive, 0, {}},
        {p, ConditionKind::TraceValue, 0, {}},
        {p, ConditionKind::Kodaira, 0, {KodairaTag::Im, 1}},
        {p, ConditionKind::Kodaira, 0, {KodairaTag::II, 0}},
    };
    bool ok = true;
    for (const LocalCondition& lc : conds) {
        const DensityReport rep = empirical_density(lc, cfg.height, cfg.workers);
        if (!rep.pass) {
            ok = false;
            d << " " << to_string(lc) << " emp=" << format_sig(rep.empirical, 6)
              << " closed=" << format_sig(to_double(rep.closed_form), 6)
              << " err=" << format_sig(rep.abs_error, 3) << " tol=" << format_sig(rep.tolerance, 3) << ";";
        }
    }
    if (ok) d << conds.size() << " conditions at p=" << p << " within tolerance";
    return ok;
}

bool check_joint_densities(std::ostringstream& d, const RunConfig& cfg) {
    const i64 p1 = cfg.primes[0], p2 = cfg.primes[1];
    const std::vector<std::vector<LocalCondition>> pairs = {
        {{p1, ConditionKind::Good, 0, {}}, {p2, ConditionKind::Good, 0, {}}},
        {{p1, ConditionKind::Split, 0, {}}, {p2, ConditionKind::NonSplit, 0, {}}},
    };
    bool ok = true;
    for (const auto& pair : pairs) {
        const DensityReport rep = joint_density(pair, cfg.height, cfg.workers);
        const double closed = to_double(rep.closed_form);
        const double rel = std::abs(rep.empirical - closed) / closed;
        d << " {" << to_string(pair[0]) << " & " << to_string(pair[1])
          << "} rel=" << format_sig(rel, 4) << " (limit 0.03);";
        if (rel > 0.03) ok = false;
    }
    return ok;
}

bool check_trace_moments(std::ostringstream& d, const RunConfig& cfg) {
    const i64 p = cfg.primes.front();
    const i64 x = cfg.height;
    bool ok = true;
    auto one = [&](int e, int r, double target, double tol) {
        TraceMomentSpec spec{{{p, e, r}}, CoefKind::AHat};
        const TraceMomentReport rep = trace_moment(spec, x, cfg.workers);
        d << " [" << to_string(spec) << "] emp=" << format_sig(rep.empirical, 6) << ";";
        if (std::abs(rep.empirical - target) > tol) ok = false;
    };
    one(1, 2, 1.0, 0.25);
    one(2, 1, -1.0, 0.25);
    one(1, 3, 0.0, 0.10);
    const SquareMomentDecomposition dec = square_moment_decomposition(p, x, cfg.workers);
    const double gap = std::abs(dec.moment_e2_r1 - (dec.moment_e1_r2 - 2.0 * dec.good_density));
    d << " accounting gap=" << format_sig(gap, 3);
    if (gap > 1e-10) ok = false;
    return ok;
}

bool check_test_function_integral(std::ostringstream& d) {
    for (int n = 1; n <= 6; ++n) {
        const double quad = integral_identity_quadrature(n);
        const mpq_class exact = integral_identity_exact(n);
        if (std::abs(quad - to_double(exact)) > 1e-10) {
            d << " quadrature off at n=" << n;
            return false;
        }
        const mpq_class phi0 = qpow(sigma_n(n), 2) / 4;
        if (exact != phi0 * phi0 / 6) {
            d << " rational identity failed at n=" << n;
            return false;
        }
    }
    d << "quadrature matches sigma^4/96 and phi(0)^2/6 for n=1..6";
    return true;
}

bool check_singular_counts(std::ostringstream& d) {
    const i64 p = 5;
    for (int m : {0, 1, 2}) {
        const auto [first, second] = verify_singular_counts(p, m);
        i64 want_first = 0;
        if (m >= 1) {
            want_first = p - 1;
            for (int i = 1; i < m; ++i) want_first *= p;
        }
        i64 want_second = (p - 1);
        if (m == 0) {
            for (int i = 0; i < 6; ++i) want_second *= p;
        } else {
            want_second *= (p - 1);
            for (int i = 0; i < m + 5; ++i) want_second *= p;
        }
        if (first != want_first || second != want_second) {
            d << " m=" << m << " got (" << first << "," << second << ") want (" << want_first << ","
              << want_second << ")";
            return false;
        }
    }
    d << "unit-pair and exact-valuation counts match at p=5, m in {0,1,2}";
    return true;
}

bool check_family_size(std::ostringstream& d, const RunConfig& cfg) {
    if (family_size(1) != 8) {
        d << " |E(1)| != 8";
        return false;
    }
    if (family_size(64) != 150) {
        d << " |E(64)| != 150";
        return false;
    }
    const i64 n = family_size(cfg.height, cfg.workers);
    const double ratio = static_cast<double>(n) / std::pow(static_cast<double>(cfg.height), 5.0 / 6.0);
    d << "|E(1)|=8 |E(64)|=150 |E(" << cfg.height << ")|=" << n << " ratio=" << format_sig(ratio, 6);
    if (cfg.height == 1'000'000) return ratio >= 3.9 && ratio <= 4.1;
    const double zeta10 = std::pow(M_PI, 10) / 93555.0;
    return std::abs(ratio - 4.0 / zeta10) <=
           std::max(0.104, 10.0 * std::pow(static_cast<double>(cfg.height), -1.0 / 3.0));
}

}  // namespace

std::string VerifySummary::to_json() const {
    std::ostringstream os;
    os << "{\"height\":" << config.height << ",\"primes\":[";
    for (size_t i = 0; i < config.primes.size(); ++i) os << (i ? "," : "") << config.primes[i];
    os << "],\"checks\":[";
    for (size_t i = 0; i < checks.size(); ++i) {
        const CheckResult& c = checks[i];
        os << (i ? "," : "") << "{\"criterion\":" << c.criterion << ",\"name\":\"" << c.name
           << "\",\"pass\":" << (c.pass ? "true" : "false") << ",\"detail\":\"" << c.detail
           << "\",\"seconds\":" << format_sig(c.seconds, 4) << "}";
    }
    os << "],\"all_pass\":" << (all_pass ? "true" : "false") << "}";
    return os.str();
}

std::string VerifySummary::to_text() const {
    std::ostringstream os;
    for (const CheckResult& c : checks)
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.criterion << " " << c.name << " — " << c.detail
           << " (" << format_sig(c.seconds, 3) << "s)\n";
    os << (all_pass ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << "\n";
    return os.str();
}

VerifySummary verify_all(const RunConfig& cfg) {
    VerifySummary out;
    out.config = cfg;
    Battery battery(out);

    battery.run(1, "rank-table entries", 1.0, [](std::ostringstream& d) { return check_rank_table(d); });
    battery.run(2, "moment bounds", 1.0, [](std::ostringstream& d) { return check_moment_bounds(d); });
    battery.run(3, "class-number identities", 30.0,
                [](std::ostringstream& d) { return check_class_number_identities(d); });
    battery.run(10, "test-function integral", 0.0,
                [](std::ostringstream& d) { return check_test_function_integral(d); });

    if (!cfg.primes.empty()) {
        battery.run(4, "trace-count identity", 60.0,
                    [](std::ostringstream& d) { return check_trace_count_identity(d); });
        battery.run(5, "kodaira-oracle agreement", 60.0,
                    [](std::ostringstream& d) { return check_kodaira_oracle(d); });
        battery.run(6, "density-table sums", 0.0, [&](std::ostringstream& d) {
            std::vector<i64> ps = {5, 7, 11};
            return check_density_table_sums(d, ps);
        });
        battery.run(7, "empirical densities", 300.0,
                    [&](std::ostringstream& d) { return check_empirical_densities(d, cfg); });
        if (cfg.primes.size() >= 2)
            battery.run(8, "joint independence", 0.0,
                        [&](std::ostringstream& d) { return check_joint_densities(d, cfg); });
        battery.run(9, "trace-formula moments", 0.0,
                    [&](std::ostringstream& d) { return check_trace_moments(d, cfg); });
        battery.run(11, "singular-pair counts", 60.0,
                    [](std::ostringstream& d) { return check_singular_counts(d); });
        battery.run(12, "family size", 0.0,
                    [&](std::ostringstream& d) { return check_family_size(d, cfg); });
    }
    return out;
}

}  // namespace ecstat
