// Command-line front end: enumeration, classification, density and
// trace-moment reports, class-number identities, and the rank-bound tables.
//
// Exit codes: 0 success, 2 argument errors, 3 precondition violations,
// 4 when a verification report contains any FAIL.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ecstat/density.hpp"
#include "ecstat/family.hpp"
#include "ecstat/hurwitz.hpp"
#include "ecstat/primes.hpp"
#include "ecstat/rankbound.hpp"
#include "ecstat/rational.hpp"
#include "ecstat/reduction.hpp"
#include "ecstat/trace.hpp"
#include "ecstat/verify.hpp"

namespace {

using ecstat::i64;

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

mpq_class parse_rational(const std::string& s) {
    const size_t slash = s.find('/');
    if (slash == std::string::npos) return ecstat::rat(std::stoll(s));
    return ecstat::rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string pretty_rat(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return ecstat::rat_str(q);
}

std::vector<ecstat::LocalCondition> parse_condition_list(const std::string& text) {
    std::vector<ecstat::LocalCondition> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(ecstat::parse_condition(item));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"ecstat: reduction statistics for the short Weierstrass curve family"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string out_path;
    std::string format = "";
    i64 height = 1'000'000;
    int workers = 0;

    auto add_common = [&](CLI::App* sub, bool with_height = true) {
        sub->add_option("--out", out_path, "write the report to a file instead of stdout");
        sub->add_option("--format", format, "output format");
        if (with_height) sub->add_option("--height", height, "height bound X of the family");
        sub->add_option("--workers", workers, "worker count (0 = all hardware threads)");
    };

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list the family of height <= X");
    add_common(enumerate);
    enumerate->callback([&] {
        Output out;
        out.open(out_path);
        const std::string fmt = format.empty() ? "csv" : format;
        const std::vector<ecstat::CurveParams> fam = ecstat::enumerate_family(height);
        if (fmt == "csv") {
            for (const auto& c : fam) out.stream() << c.a << "," << c.b << "\n";
        } else if (fmt == "jsonl") {
            for (const auto& c : fam) out.stream() << "{\"a\":" << c.a << ",\"b\":" << c.b << "}\n";
        } else if (fmt == "json") {
            out.stream() << "[";
            for (size_t i = 0; i < fam.size(); ++i)
                out.stream() << (i ? "," : "") << "{\"a\":" << fam[i].a << ",\"b\":" << fam[i].b << "}";
            out.stream() << "]\n";
        } else {
            throw CLI::ValidationError("--format must be csv, json or jsonl");
        }
    });

    // classify
    auto* classify = app.add_subcommand("classify", "reduction data at the given primes");
    std::optional<i64> ca, cb;
    std::string primes_arg = "5,7,11,13";
    classify->add_option("--a", ca, "curve coefficient a");
    classify->add_option("--b", cb, "curve coefficient b");
    classify->add_option("--primes", primes_arg, "comma-separated primes >= 5");
    add_common(classify);
    classify->callback([&] {
        Output out;
        out.open(out_path);
        std::vector<i64> primes;
        {
            std::stringstream ss(primes_arg);
            std::string item;
            while (std::getline(ss, item, ',')) if (!item.empty()) primes.push_back(std::stoll(item));
        }
        if (primes.empty()) throw std::invalid_argument("classify: at least one prime required");
        const std::string fmt = format.empty() ? (ca && cb ? "json" : "jsonl") : format;
        auto emit = [&](const ecstat::CurveParams& c, bool trailing_newline) {
            if (fmt == "csv") {
                for (i64 p : primes) {
                    const ecstat::ReductionReport r = ecstat::classify_curve(c, p);
                    out.stream() << c.a << "," << c.b << "," << r.p << "," << to_string(r.cls) << ","
                                 << r.ap << "," << to_string(r.kodaira.tag) << "," << r.kodaira.m
                                 << "," << r.delta_valuation << "\n";
                }
                return;
            }
            out.stream() << "{\"a\":" << c.a << ",\"b\":" << c.b << ",\"reports\":[";
            for (size_t i = 0; i < primes.size(); ++i)
                out.stream() << (i ? "," : "") << ecstat::report_json(ecstat::classify_curve(c, primes[i]));
            out.stream() << "]}";
            if (trailing_newline) out.stream() << "\n";
        };
        if (ca && cb) {
            if (ecstat::disc_core(*ca, *cb) == 0)
                throw std::invalid_argument("classify: singular curve (4a^3 + 27b^2 = 0)");
            if (fmt == "csv")
                out.stream() << "a,b,p,class,ap,kodaira,m,vdelta\n";
            emit({*ca, *cb}, true);
        } else {
            if (fmt == "csv") out.stream() << "a,b,p,class,ap,kodaira,m,vdelta\n";
            for (const auto& c : ecstat::enumerate_family(height)) emit(c, true);
        }
    });

    // density
    auto* density = app.add_subcommand("density", "empirical vs closed-form density of one condition");
    std::string condition_arg;
    density->add_option("--condition", condition_arg, "local condition, e.g. good@5")->required();
    add_common(density);
    density->callback([&] {
        Output out;
        out.open(out_path);
        const ecstat::LocalCondition lc = ecstat::parse_condition(condition_arg);
        const ecstat::DensityReport rep = ecstat::empirical_density(lc, height, workers);
        if (format == "csv") out.stream() << rep.to_csv();
        else out.stream() << rep.to_json() << "\n";
        if (!rep.pass) exit_code = 4;
    });

    // joint-density
    auto* joint = app.add_subcommand("joint-density", "joint density of conditions at distinct primes");
    std::string conditions_arg;
    joint->add_option("--conditions", conditions_arg, "comma-separated conditions, e.g. good@5,split@7")
        ->required();
    add_common(joint);
    joint->callback([&] {
        Output out;
        out.open(out_path);
        const auto lcs = parse_condition_list(conditions_arg);
        const ecstat::DensityReport rep = ecstat::joint_density(lcs, height, workers);
        if (format == "csv") out.stream() << rep.to_csv();
        else out.stream() << rep.to_json() << "\n";
        if (!rep.pass) exit_code = 4;
    });

    // trace
    auto* trace = app.add_subcommand("trace", "empirical moment of normalized Dirichlet coefficients");
    std::string spec_arg, kind_arg = "ahat";
    trace->add_option("--spec", spec_arg, "moment specification, e.g. \"5^1:2,7^2:1\"")->required();
    trace->add_option("--kind", kind_arg, "ahat or lambda")
        ->check(CLI::IsMember({"ahat", "lambda"}));
    add_common(trace);
    trace->callback([&] {
        Output out;
        out.open(out_path);
        const ecstat::CoefKind kind =
            kind_arg == "lambda" ? ecstat::CoefKind::Lambda : ecstat::CoefKind::AHat;
        const ecstat::TraceMomentSpec spec = ecstat::parse_trace_spec(spec_arg, kind);
        const ecstat::TraceMomentReport rep = ecstat::trace_moment(spec, height, workers);
        out.stream() << rep.to_json() << "\n";
        if (!rep.pass) exit_code = 4;
    });

    // hurwitz
    auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz class number H(-d) as num/den");
    i64 d_arg = 0;
    hurwitz->add_option("--d", d_arg, "positive integer with -d = 0 or 1 mod 4")->required();
    add_common(hurwitz, false);
    hurwitz->callback([&] {
        Output out;
        out.open(out_path);
        out.stream() << ecstat::rat_str(ecstat::hurwitz_class_number(d_arg)) << "\n";
    });

    // identities
    auto* identities = app.add_subcommand("identities", "class-number moment identities at a prime");
    i64 prime_arg = 5;
    identities->add_option("--prime", prime_arg, "prime >= 5")->required();
    add_common(identities, false);
    identities->callback([&] {
        Output out;
        out.open(out_path);
        const mpq_class first = ecstat::hurwitz_first_moment(prime_arg);
        const mpq_class second = ecstat::hurwitz_second_moment(prime_arg);
        const bool ok1 = first == ecstat::rat(2 * prime_arg);
        const bool ok2 = second == ecstat::rat(2 * prime_arg * prime_arg - 2);
        if (format == "json") {
            out.stream() << "{\"p\":" << prime_arg << ",\"first_moment\":\"" << pretty_rat(first)
                         << "\",\"first_expected\":\"" << 2 * prime_arg << "\",\"first_pass\":"
                         << (ok1 ? "true" : "false") << ",\"second_moment\":\"" << pretty_rat(second)
                         << "\",\"second_expected\":\"" << 2 * prime_arg * prime_arg - 2
                         << "\",\"second_pass\":" << (ok2 ? "true" : "false") << "}\n";
        } else {
            out.stream() << "first moment " << pretty_rat(first) << " = 2p "
                         << (ok1 ? "PASS" : "FAIL") << "\n";
            out.stream() << "second moment " << pretty_rat(second) << " = 2p^2-2 "
                         << (ok2 ? "PASS" : "FAIL") << "\n";
        }
        if (!ok1 || !ok2) exit_code = 4;
    });

    // rank-table
    auto* rank_table = app.add_subcommand("rank-table", "lower bounds on P(rank <= a)");
    int max_a = 35;
    rank_table->add_option("--max-a", max_a, "last row of the table (>= 11)");
    add_common(rank_table, false);
    rank_table->callback([&] {
        Output out;
        out.open(out_path);
        if (max_a < 11) throw std::invalid_argument("rank-table: --max-a must be >= 11");
        out.stream() << "a,bound,chosen_l,exact_num,exact_den\n";
        for (int a = 11; a <= max_a; ++a) {
            const ecstat::RankBoundRow row = ecstat::rank_cdf_lower_bound(a);
            out.stream() << row.a << "," << ecstat::truncate_decimals(row.bound, 6) << ","
                         << row.chosen_l << "," << row.bound.get_num().get_str() << ","
                         << row.bound.get_den().get_str() << "\n";
        }
    });

    // moment-bound
    auto* moment = app.add_subcommand("moment-bound", "upper bound on the n-th rank moment");
    int n_arg = 2;
    moment->add_option("--n", n_arg, "moment order (>= 1)")->required();
    add_common(moment, false);
    moment->callback([&] {
        Output out;
        out.open(out_path);
        const mpq_class b = ecstat::moment_bound(n_arg);
        out.stream() << ecstat::rat_str(b) << " ≈ " << ecstat::format_sig(ecstat::to_double(b))
                     << "\n";
    });

    // tail-bound
    auto* tail = app.add_subcommand("tail-bound", "bound on P(rank >= (1+C) 9n)");
    std::string c_arg = "1";
    tail->add_option("--n", n_arg, "n >= 1")->required();
    tail->add_option("--C", c_arg, "positive rational, e.g. 1/3")->required();
    add_common(tail, false);
    tail->callback([&] {
        Output out;
        out.open(out_path);
        const mpq_class b = ecstat::tail_bound(n_arg, parse_rational(c_arg));
        out.stream() << ecstat::rat_str(b) << " ≈ " << ecstat::format_sig(ecstat::to_double(b))
                     << "\n";
    });

    // verify-all
    auto* verify = app.add_subcommand("verify-all", "run the full verification battery");
    std::string verify_primes = "5,7,11,13";
    verify->add_option("--primes", verify_primes, "comma-separated primes (empty = identity suites only)");
    add_common(verify);
    verify->callback([&] {
        Output out;
        out.open(out_path);
        ecstat::RunConfig cfg;
        cfg.height = height;
        cfg.workers = workers;
        cfg.primes.clear();
        std::stringstream ss(verify_primes);
        std::string item;
        while (std::getline(ss, item, ',')) if (!item.empty()) cfg.primes.push_back(std::stoll(item));
        for (i64 p : cfg.primes)
            if (p < 5 || !ecstat::is_prime(p))
                throw std::invalid_argument("verify-all: primes must be >= 5");
        const ecstat::VerifySummary summary = ecstat::verify_all(cfg);
        if (format == "text") out.stream() << summary.to_text();
        else out.stream() << summary.to_json() << "\n";
        if (!summary.all_pass) exit_code = 4;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
