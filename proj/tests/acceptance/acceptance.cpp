// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run everything
//   acceptance 3 5        run selected criteria
// Exit status is nonzero when any selected criterion fails.

#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../properties.hpp"
#include "shannon/asymptotics.hpp"
#include "shannon/cli.hpp"
#include "shannon/constructions.hpp"
#include "shannon/error.hpp"

using namespace shannon;

namespace {

struct Result {
    bool pass = true;
    std::string detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

const std::vector<std::string> xy = {"x", "y"};
const std::vector<std::string> xyz = {"x", "y", "z"};

Polynomial P2(const std::string& t) { return parse_polynomial(t, xy); }
Polynomial P3(const std::string& t) { return parse_polynomial(t, xyz); }

// sigma_j recursion in 1024-bit floating point: (floor, minimal e >= 2).
std::vector<std::pair<long, unsigned>> float_recursion(std::size_t blocks) {
    mpf_class s(0, 1024);
    s = sqrt(mpf_class(8, 1024));
    std::vector<std::pair<long, unsigned>> out;
    for (std::size_t j = 0; j < blocks; ++j) {
        mpf_class f(floor(s), 1024);
        mpf_class frac(s - f, 1024);
        unsigned e = 2;
        while (frac * (1UL << e) <= 2) ++e;
        out.emplace_back(f.get_si(), e);
        s = frac * (1UL << e);
    }
    return out;
}

bool dyadic(const Rational& r) {
    Integer den = r.get_den();
    return (den & (den - 1)) == 0;
}

Result block_identities() {
    Result r;
    auto t0 = Clock::now();
    auto seq = example77_sequence(QI::sqrt(8));
    auto v = verify_block_sums(seq, 3);
    auto ref = float_recursion(3);
    r.check(v.blocks.size() == 3, "expected three blocks");
    for (std::size_t j = 0; j < v.blocks.size(); ++j) {
        const auto& b = v.blocks[j];
        const Rational u = b.claimed.pivot_value;
        const std::string tag = "block " + std::to_string(j) + ": ";
        r.check(b.claimed.e == ref[j].second, tag + "e differs from the floating recursion");
        r.check(b.claimed.sigma.floor() == ref[j].first, tag + "floor differs from the floating recursion");
        r.check(b.sub_sum && *b.sub_sum == u * (ref[j].first - 1), tag + "sub-block sum is not floor - 1");
        r.check(b.sum && *b.sum == u * ref[j].first, tag + "block sum is not floor");
        r.check(b.next_pivot_value && *b.next_pivot_value == u * pow2(-static_cast<long>(ref[j].second)),
                tag + "new pivot value is not 1/2^e");
        r.check(b.pass(), tag + b.detail);
    }
    double dt = seconds_since(t0);
    r.check(dt < 1.0, "took " + fmt(dt) + " s");
    if (r.pass) r.detail = "3 blocks exact, e = 2, 3, 2, " + fmt(dt * 1000) + " ms";
    return r;
}

Result convergence_defect() {
    Result r;
    auto t0 = Clock::now();
    auto seq = example77_sequence(QI::sqrt(8));
    const BlockRule& rule = *block_rule(seq);
    auto rows = defect_table(rule, 6);

    // every emitted pivot value up to the end of block 5 has a power-of-two denominator
    std::size_t stages = rule.block(5).end;
    auto pv = seq.rule()->exact_pivot_values(stages);
    auto solved = solve_pivot_values(seq.prefix(stages + 1), 2);
    bool all_dyadic = true;
    for (std::size_t n = 0; n < stages; ++n) {
        all_dyadic = all_dyadic && (*pv)[n].is_rational() && dyadic((*pv)[n].to_rational()) && solved.values[n] &&
                     *solved.values[n] == (*pv)[n].to_rational();
    }
    r.check(all_dyadic, "a pivot value is not dyadic or differs from the solved value");

    std::string literal;
    bool corrected = true;
    for (const auto& row : rows) {
        if (row.boundary == 0) continue;
        if (!row.below_bound) {
            literal += (literal.empty() ? "" : ", ") + std::string("j=") + std::to_string(row.boundary) + ": " +
                       fmt(row.defect.to_double(), 4) + " >= " + fmt(row.bound.get_d(), 4);
        }
        corrected = corrected && row.below_previous_bound && row.identity_holds;
    }
    r.check(literal.empty(), "defect not below prod_{i<j} 2^-e_i at " + literal +
                                 " (defect equals sigma_j * prod_{i<j} 2^-e_i with sigma_j > 2; "
                                 "below prod_{i<j-1} 2^-e_i: " + (corrected ? "yes" : "no") + ")");
    double dt = seconds_since(t0);
    r.check(dt < 5.0, "took " + fmt(dt) + " s");
    if (r.pass) r.detail = "6 boundaries exact, " + std::to_string(stages) + " dyadic pivot values";
    return r;
}

Result cic_family() {
    Result r;
    auto t0 = Clock::now();
    Params p;
    p.horizon = 64;
    Analyzer an(cic3d_sequence(QI::sqrt(8)), P3("x"), p);
    auto e = an.e_value(P3("z"));
    r.check(e.value == 1 && e.certified(), "e(z) = " + to_string(e));
    auto tau = an.tau();
    r.check(tau.contains(QI::sqrt(8)), "tau enclosure " + tau.to_string() + " misses sqrt(8)");
    r.check(!tau.is_infinite() && tau.width() < Rational(1, 1000), "tau enclosure too wide");
    auto dep = rational_dependence(tau, ValueGroup::dyadic());
    r.check(dep.kind == Dependence::Kind::Independent, "dependence: " + dep.to_string());

    RunConfig cfg;
    cfg.kind = "cic3d";
    cfg.sigma = "sqrt(8)";
    cfg.params = p;
    cfg.elements = {"z"};
    auto report = run(cfg, "cic");
    r.check(report.text.find("verdict: completely integrally closed\n") != std::string::npos, "cic verdict missing");
    r.check(report.exit_code == 0, "cic exit code " + std::to_string(report.exit_code));
    double dt = seconds_since(t0);
    r.check(dt < 10.0, "took " + fmt(dt) + " s");
    if (r.pass) r.detail = "e(z) = 1, tau = " + tau.to_string() + ", independent over Z[1/2], " + fmt(dt * 1000) + " ms";
    return r;
}

Result non_cic_witness() {
    Result r;
    auto t0 = Clock::now();
    Params p;
    p.horizon = 40;
    Analyzer an(builtin_family("fibonacci3d"), P3("x"), p);
    const QI phi = QI::golden_ratio();
    r.check(phi * phi == QI(Rational(1)) + phi, "phi^2 != 1 + phi");
    auto wz = an.w_exact(P3("z"));
    auto wxy = an.w_exact(P3("x*y"));
    r.check(wz && *wz == phi * phi, "w(z) is not phi^2");
    r.check(wxy && *wxy == QI(Rational(1)) + phi, "w(xy) is not 1 + phi");
    r.check(an.almost_integral_witness(P3("z"), P3("x*y")), "z/(xy) is not reported almost integral");
    auto v = an.boundary_value_arch(P3("z"), P3("x*y"));
    r.check(v.w.exact && *v.w.exact == QI(Rational(0)) && v.e_component == -1, "boundary value " + v.to_string());
    double dt = seconds_since(t0);
    r.check(dt < 5.0, "took " + fmt(dt) + " s");
    if (r.pass) r.detail = "w(z) = w(xy) = " + wz->to_string() + ", v(z/xy) = " + v.to_string();
    return r;
}

Result dichotomy() {
    Result r;
    auto t0 = Clock::now();
    auto fib = Analyzer(builtin_family("fibonacci"), P2("x")).classify();
    double t_fib = seconds_since(t0);
    r.check(fib.verdict == Verdict::Archimedean, "fibonacci verdict " + std::string(to_string(fib.verdict)));
    r.check(!fib.tau.is_infinite() && fib.tau.lo >= Rational(2617, 1000) && fib.tau.hi <= Rational(2619, 1000),
            "fibonacci tau " + fib.tau.to_string());
    auto t1 = Clock::now();
    auto dir = Analyzer(builtin_family("directional"), P2("x")).classify();
    double t_dir = seconds_since(t1);
    r.check(dir.verdict == Verdict::NonArchimedean && dir.certified, "directional verdict " +
                                                                          std::string(to_string(dir.verdict)));
    r.check(t_fib < 2.0 && t_dir < 2.0, "took " + fmt(t_fib) + " s / " + fmt(t_dir) + " s");
    if (r.pass) r.detail = "fibonacci Archimedean (tau " + fib.tau.to_string() + "), directional NonArchimedean (certified)";
    return r;
}

Result tau_bound() {
    Result r;
    Analyzer an(builtin_family("fibonacci"), P2("x"));
    auto b = an.tau_upper_bound({P2("x"), P2("y")});
    r.check(!b.bound_violated && (b.tau.hi <= b.bound.hi), "tau exceeds the bound upper end");
    r.check(abs(b.bound.hi - b.tau.hi) < Rational(1, 1'000'000) && abs(b.bound.lo - b.tau.lo) < Rational(1, 1'000'000),
            "bound " + b.bound.to_string() + " and tau " + b.tau.to_string() + " differ by more than 1e-6");
    if (r.pass) r.detail = "bound " + b.bound.to_string() + " = tau";
    return r;
}

Result nonarchimedean_composite() {
    Result r;
    Analyzer an(builtin_family("directional"), P2("x"));
    oracle::Generator gen(2024);
    struct Probe {
        Polynomial f;
        Exponent a, b;
    };
    std::vector<Probe> probes;
    std::size_t e_ok = 0;
    for (int i = 0; i < 50; ++i) {
        Exponent a = gen.pick(4), b = gen.pick(4);
        Polynomial unit = Polynomial::constant(2, Rational(static_cast<long>(gen.pick(5)) + 1));
        Polynomial extra = gen.polynomial(2, 3, 3, true);
        Polynomial f = Polynomial::term(Monomial(std::vector<Exponent>{a, b}), 1) * (unit + extra);
        // oracle: y-adic order read off the expanded product
        Exponent expect = f.min_exponent(1);
        EValue e = an.e_value(f);
        if (e.value == expect) ++e_ok;
        probes.push_back({f, a, expect});
    }
    r.check(e_ok == 50, std::to_string(50 - e_ok) + " of 50 probes have e != y-adic order");
    r.check(an.p_infinity_check(P2("y")), "y not in P-infinity");
    r.check(!an.p_infinity_check(P2("x")), "x in P-infinity");

    std::size_t lex_ok = 0, pairs_ok = 0, pairs = 0;
    std::vector<std::pair<BoundaryValue, std::pair<Integer, Integer>>> values;
    for (int i = 0; i < 20; ++i) {
        const Probe& pr = probes[static_cast<std::size_t>(i)];
        BoundaryValue v = an.boundary_value_nonarch(pr.f, P2("y"));
        // oracle: f / y^b is x^a times a unit, so the pair is (b, a) with w(x) = 1
        Polynomial rest = exact_divide_by_pivot_power(pr.f, 1, pr.b);
        Exponent xa = rest.min_exponent(0);
        bool ok = v.e_component == Integer(static_cast<unsigned long>(pr.b)) && v.w.exact &&
                  *v.w.exact == QI(Rational(static_cast<unsigned long>(xa)));
        if (ok) ++lex_ok;
        values.push_back({v, {Integer(static_cast<unsigned long>(pr.b)), Integer(static_cast<unsigned long>(xa))}});
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values.size(); ++j) {
            ++pairs;
            auto ka = values[i].second, kb = values[j].second;
            Ordering expect = ka < kb ? Ordering::Less : ka == kb ? Ordering::Equal : Ordering::Greater;
            if (compare(values[i].first, values[j].first) == expect) ++pairs_ok;
        }
    }
    r.check(lex_ok == 20, std::to_string(20 - lex_ok) + " of 20 boundary values differ from (e, w) of the oracle");
    r.check(pairs_ok == pairs, "lexicographic comparison disagrees on " + std::to_string(pairs - pairs_ok) + " pairs");
    if (r.pass) r.detail = "50 e-probes, P-infinity membership, 20 boundary values and " + std::to_string(pairs) + " comparisons";
    return r;
}

Result property_suites() {
    Result r;
    auto t0 = Clock::now();
    const std::size_t n = 1000;
    std::vector<std::pair<std::string, properties::Outcome>> suites = {
        {"ord axioms", properties::ord_axioms(n)},
        {"transform identities", properties::transform_identities(n)},
        {"nonincreasing orders", properties::nonincreasing_orders(n)},
        {"eventual sign", properties::eventual_sign(n)},
        {"e additivity", properties::e_additivity(n)},
        {"series consistency", properties::series_consistency(n)},
        {"w normalization", properties::w_normalization(n)},
    };
    std::string summary;
    for (const auto& [name, o] : suites) {
        r.check(o.ok(), name + ": " + std::to_string(o.failures) + " failures (" + o.first_failure + ")");
        summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(o.checked) + "/" + std::to_string(o.cases);
    }
    if (r.pass) r.detail = summary + ", " + fmt(seconds_since(t0), 3) + " s";
    return r;
}

Result negative_controls() {
    Result r;
    auto seq = example77_sequence(QI::sqrt(8));
    const BlockRule& rule = *block_rule(seq);
    std::vector<BlockRecord> claimed = {rule.block(0), rule.block(1), rule.block(2), rule.block(3)};
    for (std::size_t target = 0; target < claimed.size(); ++target) {
        auto moves = seq.prefix(claimed.back().end + 1);
        moves.erase(moves.begin() + static_cast<long>(claimed[target].start + claimed[target].d + 1));
        auto v = verify_block_sums(TransformSequence::explicit_list(seq.variables(), moves), claimed);
        r.check(!v.pass() && v.first_failure && *v.first_failure == target,
                "removing a move from block " + std::to_string(target) + " reported block " +
                    (v.first_failure ? std::to_string(*v.first_failure) : std::string("none")));
    }
    auto code = [](const std::function<void()>& f) -> std::optional<ErrorCode> {
        try {
            f();
        } catch (const Error& err) {
            return err.code();
        }
        return std::nullopt;
    };
    r.check(code([] { example77_sequence(QI(Rational(5, 2))); }) == ErrorCode::SigmaOutOfRange, "rational sigma accepted");
    r.check(code([] { example76_block(QI::parse("3")); }) == ErrorCode::SigmaOutOfRange, "integer sigma accepted");
    r.check(code([] { Analyzer(builtin_family("directional"), P2("y")).w_ratio(P2("x")); }) == ErrorCode::InvalidNormalizer,
            "normalizer y accepted on directional");
    r.check(code([] { Analyzer(builtin_family("fibonacci"), P2("x^2 + 1")).tau(); }) == ErrorCode::InvalidNormalizer,
            "unit normalizer accepted");
    if (r.pass) r.detail = "tampering caught in blocks 0-3, rational sigma and bad normalizers rejected";
    return r;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
};

} // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all = {
        {1, "block identities, sigma = sqrt(8), 3 blocks", block_identities},
        {2, "series defect bound, sigma = sqrt(8), 6 blocks", convergence_defect},
        {3, "completely integrally closed family", cic_family},
        {4, "almost integral witness and rank-2 boundary value", non_cic_witness},
        {5, "archimedean dichotomy", dichotomy},
        {6, "tau upper bound on fibonacci", tau_bound},
        {7, "non-archimedean composite valuation", nonarchimedean_composite},
        {8, "randomized property suites", property_suites},
        {9, "negative controls", negative_controls},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Result res;
        try {
            res = c.run();
        } catch (const Error& err) {
            res = {false, std::string(to_string(err.code())) + ": " + err.what()};
        } catch (const std::exception& err) {
            res = {false, std::string("exception: ") + err.what()};
        }
        std::printf("criterion %d %s: %s (%s)\n", c.id, res.pass ? "PASS" : "FAIL", c.title, res.detail.c_str());
        std::fflush(stdout);
        if (!res.pass) ++failed;
    }
    return failed ? 1 : 0;
}
