#include <algorithm>
#include <sstream>

#include "shannon/cli.hpp"
#include "shannon/constructions.hpp"
#include "shannon/error.hpp"

namespace shannon {

namespace {

class ReportWriter {
public:
    void line(const std::string& key, const std::string& value) { text_ << key << ": " << value << "\n"; }
    void raw(const std::string& s) { text_ << s << "\n"; }
    void csv(const std::string& row) { csv_ << row << "\n"; }

    Report finish(bool certain) {
        Report r;
        r.exit_code = certain ? 0 : 2;
        r.text = text_.str();
        r.csv = csv_.str();
        return r;
    }

private:
    std::ostringstream text_;
    std::ostringstream csv_;
};

struct Context {
    const RunConfig& cfg;
    TransformSequence seq;
    Analyzer analyzer;
    std::vector<Polynomial> elements;
    std::optional<Polynomial> denominator;
    std::optional<Polynomial> uniformizer;

    std::string show(const Polynomial& p) const { return to_string(p, seq.variables()); }
    Polynomial one() const { return Polynomial::constant(seq.dimension(), Rational(1)); }
    std::string quotient(const Polynomial& a) const {
        return denominator ? "(" + show(a) + ")/(" + show(*denominator) + ")" : show(a);
    }
};

Polynomial parse_field(const std::string& field, const std::string& text, const std::vector<std::string>& vars) {
    try {
        return parse_polynomial(text, vars);
    } catch (const Error& err) {
        fail(err.code(), field + ": " + err.what());
    }
}

Context make_context(const RunConfig& cfg) {
    TransformSequence seq = build_sequence(cfg);
    const auto& vars = seq.variables();
    Polynomial x = cfg.normalizer.empty() ? Polynomial::variable(seq.dimension(), 0)
                                          : parse_field("query.normalizer", cfg.normalizer, vars);
    if (x.is_zero()) fail(ErrorCode::Config, "query.normalizer: must be nonzero");
    Context ctx{cfg, seq, Analyzer(seq, x, cfg.params), {}, {}, {}};
    for (std::size_t i = 0; i < cfg.elements.size(); ++i) {
        Polynomial p = parse_field("query.elements[" + std::to_string(i) + "]", cfg.elements[i], vars);
        if (p.is_zero()) fail(ErrorCode::ZeroElement, "query.elements[" + std::to_string(i) + "]: element is zero");
        ctx.elements.push_back(std::move(p));
    }
    if (!cfg.denominator.empty()) {
        ctx.denominator = parse_field("query.denominator", cfg.denominator, vars);
        if (ctx.denominator->is_zero()) fail(ErrorCode::ZeroElement, "query.denominator: element is zero");
    }
    if (!cfg.uniformizer.empty()) ctx.uniformizer = parse_field("query.uniformizer", cfg.uniformizer, vars);
    return ctx;
}

void header(ReportWriter& out, const Context& ctx, const std::string& command) {
    std::string vars;
    for (const auto& v : ctx.seq.variables()) vars += (vars.empty() ? "" : ", ") + v;
    std::string name = ctx.seq.rule() ? ctx.seq.rule()->name() : to_string(ctx.seq.kind());
    out.line("command", command);
    out.line("sequence", name + " (dimension " + std::to_string(ctx.seq.dimension()) + "; variables " + vars + ")");
    if (!ctx.cfg.sigma.empty() && ctx.seq.rule() && block_rule(ctx.seq)) out.line("sigma", block_rule(ctx.seq)->sigma().to_string());
    const Params& p = ctx.analyzer.params();
    out.line("normalizer", ctx.show(ctx.analyzer.normalizer()));
    out.line("horizon", std::to_string(p.horizon) + " (origin " + std::to_string(p.origin) + ", window " +
                            std::to_string(p.window) + ", guard " + to_string(p.guard) + ")");
}

void require_elements(const Context& ctx, std::size_t n, const std::string& command) {
    if (ctx.elements.size() < n) {
        fail(ErrorCode::Config, "query.elements: '" + command + "' needs " + std::to_string(n) + " element(s)");
    }
}

std::string certainty(bool certified) { return certified ? "certified" : "heuristic"; }

std::string describe(const ValueEstimate& v) {
    std::string s = v.to_string() + " [" + to_string(v.kind) + ", " + to_string(v.status) + ", " + certainty(v.certified) + "]";
    if (!v.note.empty()) s += " (" + v.note + ")";
    return s;
}

Report cmd_track(const Context& ctx) {
    require_elements(ctx, 1, "track");
    ReportWriter out;
    header(out, ctx, "track");
    const bool multi = ctx.elements.size() > 1;
    out.csv(std::string(multi ? "element," : "") + "n,ord_n_a,ord_n_transform,partial_w_series_lo,ratio_num,ratio_den");
    TrackedElement tx = ctx.analyzer.tracked(ctx.analyzer.normalizer());
    for (std::size_t k = 0; k < ctx.elements.size(); ++k) {
        const Polynomial& a = ctx.elements[k];
        TrackedElement t = ctx.analyzer.tracked(a);
        std::optional<std::vector<Rational>> partials;
        try {
            partials = ctx.analyzer.series_partials(a);
        } catch (const Error&) {
            partials.reset();
        }
        out.line("element", ctx.show(a));
        out.raw("  n  ord_n(a)  ord_n(a_n)");
        for (std::size_t i = 0; i < t.stages.size(); ++i) {
            const auto& s = t.stages[i];
            std::ostringstream row;
            row << "  " << s.n << "  " << s.ord_a.get_str() << "  " << s.ord_transform;
            out.raw(row.str());
            std::string lo = partials ? to_decimal((*partials)[i], 12) : "";
            out.csv((multi ? std::to_string(k) + "," : "") + std::to_string(s.n) + "," + s.ord_a.get_str() + "," +
                    std::to_string(s.ord_transform) + "," + lo + "," + s.ord_a.get_str() + "," +
                    tx.stages[i].ord_a.get_str());
        }
        out.line("final transform", ctx.show(t.stages.back().transform));
    }
    out.line("verdict", "tracked " + std::to_string(ctx.elements.size()) + " element(s)");
    out.line("certainty", "exact");
    out.line("basis", "transform of a principal ideal; ord_n(a) from transform orders and pivot image orders");
    return out.finish(true);
}

Report cmd_e(const Context& ctx) {
    require_elements(ctx, 1, "e");
    ReportWriter out;
    header(out, ctx, "e");
    bool all = true;
    std::string last;
    for (const auto& a : ctx.elements) {
        EValue e = ctx.denominator ? ctx.analyzer.e_of_quotient(a, *ctx.denominator) : ctx.analyzer.e_value(a);
        all = all && e.certified();
        out.line("e(" + ctx.quotient(a) + ")", to_string(e) + "; " + e.reason);
        last = e.value.get_str();
    }
    out.line("verdict", ctx.elements.size() == 1 ? "e = " + last : "computed " + std::to_string(ctx.elements.size()) + " values");
    out.line("certainty", certainty(all));
    out.line("basis", "e is the limit of the transform orders; unit transforms give e = 0");
    return out.finish(all);
}

Report cmd_w(const Context& ctx) {
    require_elements(ctx, 1, "w");
    ReportWriter out;
    header(out, ctx, "w");
    Classification c = ctx.analyzer.classify();
    out.line("classification", std::string(to_string(c.verdict)) + " (" + certainty(c.certified) + ")");
    bool all = true;
    std::string last;
    for (const auto& a : ctx.elements) {
        const Polynomial b = ctx.denominator ? *ctx.denominator : ctx.one();
        ValueEstimate w = c.verdict == Verdict::NonArchimedean ? ctx.analyzer.w_ratio(a, b) : ctx.analyzer.w_series(a, b);
        all = all && w.certified;
        out.line("w(" + ctx.quotient(a) + ")", describe(w));
        if (c.verdict != Verdict::NonArchimedean) out.line("  ratio estimate", describe(ctx.analyzer.w_ratio(a, b)));
        last = w.to_string();
    }
    out.line("verdict", ctx.elements.size() == 1 ? "w = " + last : "computed " + std::to_string(ctx.elements.size()) + " values");
    out.line("certainty", certainty(all));
    out.line("basis", c.verdict == Verdict::NonArchimedean ? "e > 0 forces w = +inf on non-archimedean sequences"
                                                           : "w(a) = sum of ord_n(a_n) w(x_n)");
    return out.finish(all);
}

Report cmd_tau(const Context& ctx) {
    ReportWriter out;
    header(out, ctx, "tau");
    ValueEstimate t = ctx.analyzer.tau();
    out.line("tau", describe(t));
    out.line("enclosure width", t.is_infinite() ? "n/a" : to_decimal(t.width(), 30));
    out.line("verdict", "tau = " + t.to_string());
    out.line("certainty", certainty(t.certified));
    out.line("basis", "tau is the sum of the pivot values w(x_n)");
    return out.finish(t.certified);
}

Report cmd_classify(const Context& ctx) {
    ReportWriter out;
    header(out, ctx, "classify");
    Classification c = ctx.analyzer.classify();
    out.line("tau", describe(c.tau));
    out.line("reason", c.reason);
    out.line("verdict", to_string(c.verdict));
    out.line("certainty", certainty(c.certified));
    out.line("basis", "archimedean iff tau is finite");
    return out.finish(c.certified && c.verdict != Verdict::Undecided);
}

Report cmd_boundary(const Context& ctx) {
    require_elements(ctx, 1, "boundary");
    ReportWriter out;
    header(out, ctx, "boundary");
    Classification c = ctx.analyzer.classify();
    out.line("classification", std::string(to_string(c.verdict)) + " (" + certainty(c.certified) + ")");
    bool all = true;
    for (const auto& a : ctx.elements) {
        if (c.verdict == Verdict::NonArchimedean) {
            if (!ctx.uniformizer) fail(ErrorCode::Config, "query.uniformizer: required on non-archimedean sequences");
            if (ctx.denominator) fail(ErrorCode::Config, "query.denominator: not used on non-archimedean sequences");
            BoundaryValue v = ctx.analyzer.boundary_value_nonarch(a, *ctx.uniformizer);
            bool cert = v.w.certified || v.w.is_exact();
            cert = cert && ctx.analyzer.e_value(a).certified() && ctx.analyzer.e_value(*ctx.uniformizer).certified();
            all = all && cert;
            out.line("v(" + ctx.show(a) + ")", v.to_string() + " (e(a)/e(z), w(a/z^k)); " + certainty(cert));
        } else {
            const Polynomial b = ctx.denominator ? *ctx.denominator : ctx.one();
            BoundaryValue v = ctx.analyzer.boundary_value_arch(a, b);
            bool cert = v.w.certified && ctx.analyzer.e_of_quotient(a, b).certified();
            all = all && cert;
            out.line("v(" + ctx.quotient(a) + ")", v.to_string() + " (w, -e); " + certainty(cert));
        }
    }
    out.line("verdict", "boundary values computed, ordered lexicographically");
    out.line("certainty", certainty(all));
    out.line("basis", c.verdict == Verdict::NonArchimedean ? "composite of e and w on the residue field"
                                                           : "lexicographic pair (w, -e)");
    return out.finish(all);
}

Report cmd_witness(const Context& ctx) {
    require_elements(ctx, 1, "witness");
    const Polynomial& a = ctx.elements[0];
    Polynomial y = ctx.elements.size() > 1 ? ctx.elements[1] : ctx.denominator ? *ctx.denominator : ctx.analyzer.normalizer();
    ReportWriter out;
    header(out, ctx, "witness");
    out.line("a", ctx.show(a));
    out.line("y", ctx.show(y));
    out.line("e(a)", to_string(ctx.analyzer.e_value(a)));
    out.line("w(a)", describe(ctx.analyzer.w_series(a)));
    out.line("w(y)", describe(ctx.analyzer.w_series(y)));
    bool result = false;
    try {
        result = ctx.analyzer.almost_integral_witness(a, y);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::UndecidedEquality) throw;
        out.line("verdict", "undecided");
        out.line("reason", err.what());
        out.line("certainty", "heuristic");
        out.line("basis", "almost integral iff w(a) = w(y) and e(a) > 0");
        return out.finish(false);
    }
    out.line("verdict", result ? "a/y is almost integral over S but not in S" : "not a witness");
    out.line("certainty", "certified");
    out.line("basis", "almost integral iff w(a) = w(y) and e(a) > 0");
    return out.finish(true);
}

Report cmd_cic(const Context& ctx) {
    ReportWriter out;
    header(out, ctx, "cic");
    Classification c = ctx.analyzer.classify();
    out.line("classification", std::string(to_string(c.verdict)) + " (" + certainty(c.certified) + ")");
    out.line("tau", describe(c.tau));
    std::vector<Polynomial> probes = ctx.elements;
    if (probes.empty() && ctx.seq.dimension() == 3) probes.push_back(Polynomial::variable(3, 2));
    for (const auto& p : probes) out.line("e(" + ctx.show(p) + ")", to_string(ctx.analyzer.e_value(p)));

    if (c.verdict == Verdict::NonArchimedean) {
        out.line("verdict", "not completely integrally closed");
        out.line("certainty", certainty(c.certified));
        out.line("basis", "non-archimedean: the complete integral closure is the Noetherian hull");
        return out.finish(c.certified);
    }
    ValueGroup group = ctx.seq.rule() ? ctx.seq.rule()->value_group() : ValueGroup::unknown();
    Dependence dep = rational_dependence(c.tau, group);
    out.line("value group w(T^x)", to_string(group));
    out.line("rational dependence", dep.to_string() + " (" + dep.reason + ")");
    bool certain = c.certified && c.verdict == Verdict::Archimedean && dep.kind != Dependence::Kind::Unknown;
    std::string verdict = dep.kind == Dependence::Kind::Independent ? "completely integrally closed"
                        : dep.kind == Dependence::Kind::Dependent   ? "not completely integrally closed"
                                                                    : "undecided";
    out.line("verdict", verdict);
    out.line("certainty", certainty(certain));
    out.line("basis", "completely integrally closed iff tau is rationally independent over w(T^x)");
    return out.finish(certain);
}

Report cmd_construct(const Context& ctx) {
    ReportWriter out;
    header(out, ctx, "construct");
    out.csv("block,d_j,e_j,sum,pivot_value,defect_bound");
    if (ctx.cfg.kind == "example76") {
        auto [moves, rec] = example76_block(QuadraticIrrational::parse(ctx.cfg.sigma), ctx.seq.dimension());
        out.line("block", "d = " + std::to_string(rec.d) + ", e = " + std::to_string(rec.e) + ", " +
                              std::to_string(moves.size()) + " moves");
        for (std::size_t n = 0; n < moves.size(); ++n) {
            out.raw("  " + std::to_string(n) + ": " + to_string(moves[n], ctx.seq.variables()));
        }
        Rational u = rec.pivot_value;
        out.csv("0," + std::to_string(rec.d) + "," + std::to_string(rec.e) + "," + to_string(Rational(rec.sigma.floor()) * u) +
                "," + to_string(u) + "," + to_string(u * pow2(-static_cast<long>(rec.e))));
    } else {
        const BlockRule* rule = block_rule(ctx.seq);
        if (!rule) fail(ErrorCode::Config, "sequence.kind: construct needs example76, example77 or cic3d");
        for (std::size_t j = 0; j < ctx.cfg.blocks; ++j) {
            BlockRecord rec = rule->block(j);
            out.raw("  block " + std::to_string(j) + ": sigma_j = " + rec.sigma.to_string() + ", d = " + std::to_string(rec.d) +
                    ", e = " + std::to_string(rec.e) + ", stages " + std::to_string(rec.start) + ".." +
                    std::to_string(rec.end - 1) + ", pivot value " + to_string(rec.pivot_value));
            out.csv(std::to_string(j) + "," + std::to_string(rec.d) + "," + std::to_string(rec.e) + "," +
                    to_string(Rational(rec.sigma.floor()) * rec.pivot_value) + "," + to_string(rec.pivot_value) + "," +
                    to_string(rec.pivot_value * pow2(-static_cast<long>(rec.e))));
        }
    }
    out.line("verdict", "constructed");
    out.line("certainty", "exact");
    out.line("basis", "block construction with e minimal such that 2^e frac(sigma) > 2");
    return out.finish(true);
}

Report cmd_verify(const Context& ctx) {
    const BlockRule* rule = block_rule(ctx.seq);
    if (!rule) fail(ErrorCode::Config, "sequence.kind: verify needs example77 or cic3d");
    ReportWriter out;
    header(out, ctx, "verify");
    out.csv("block,d_j,e_j,sum,pivot_value,defect_bound");
    BlockVerification v = verify_block_sums(ctx.seq, ctx.cfg.blocks);
    auto opt = [](const std::optional<Rational>& r) { return r ? to_string(*r) : std::string("undetermined"); };
    for (const auto& b : v.blocks) {
        const auto& rec = b.claimed;
        out.raw("  block " + std::to_string(rec.index) + " (d=" + std::to_string(rec.d) + ", e=" + std::to_string(rec.e) +
                "): sub-block sum " + opt(b.sub_sum) + ", block sum " + opt(b.sum) + ", next pivot value " +
                opt(b.next_pivot_value) + " -> " + (b.pass() ? "pass" : "FAIL " + b.detail));
        out.csv(std::to_string(rec.index) + "," + std::to_string(rec.d) + "," + std::to_string(rec.e) + "," + opt(b.sum) +
                "," + opt(b.next_pivot_value) + "," + to_string(rec.pivot_value * pow2(-static_cast<long>(rec.e))));
    }
    for (const auto& row : defect_table(*rule, ctx.cfg.blocks)) {
        if (row.boundary == 0) continue;
        out.raw("  after block " + std::to_string(row.boundary - 1) + ": sigma - partial = " + row.defect.to_string() + " ~ " +
                to_decimal(row.defect.lower_bound(), 9) + "; below " + to_string(row.bound) + ": " +
                (row.below_bound ? "yes" : "no") + "; below " + to_string(*row.previous_bound) + ": " +
                (row.below_previous_bound ? "yes" : "no") + "; equals sigma_j * pivot value: " +
                (row.identity_holds ? "yes" : "no"));
    }
    if (v.pass()) {
        out.line("verdict", "all block identities pass");
    } else {
        out.line("verdict", "block " + std::to_string(*v.first_failure) + " fails");
    }
    out.line("certainty", "exact");
    out.line("basis", "block sum floor(sigma_j) and next pivot value 1/2^e_j, relative to the block's first pivot");
    Report r = out.finish(true);
    if (!v.pass()) r.exit_code = 1;
    return r;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"track", "e", "w", "tau", "classify", "boundary", "witness", "cic",
                                                   "construct", "verify"};
    return names;
}

Report run(const RunConfig& config, const std::string& command) {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        fail(ErrorCode::Config, "unknown command '" + command + "'");
    }
    Context ctx = make_context(config);
    if (command == "track") return cmd_track(ctx);
    if (command == "e") return cmd_e(ctx);
    if (command == "w") return cmd_w(ctx);
    if (command == "tau") return cmd_tau(ctx);
    if (command == "classify") return cmd_classify(ctx);
    if (command == "boundary") return cmd_boundary(ctx);
    if (command == "witness") return cmd_witness(ctx);
    if (command == "cic") return cmd_cic(ctx);
    if (command == "construct") return cmd_construct(ctx);
    return cmd_verify(ctx);
}

} // namespace shannon
