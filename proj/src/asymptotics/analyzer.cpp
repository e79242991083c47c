#include <algorithm>

#include "shannon/asymptotics.hpp"
#include "shannon/error.hpp"

namespace shannon {

namespace {

QuadraticIrrational qi(const Integer& n) { return QuadraticIrrational(Rational(n)); }

// The transform is (monomial in passive variables) * (polynomial with a
// nonzero constant term); then it reproduces itself at every later stage.
bool settled_monomial(const Polynomial& f, const TransformSequence& seq, std::size_t stage) {
    const std::size_t d = f.dimension();
    std::vector<Exponent> lead(d);
    for (std::size_t i = 0; i < d; ++i) {
        lead[i] = f.min_exponent(i);
        if (lead[i] > 0 && !seq.variable_passive_from(i, stage)) return false;
    }
    return f.coefficient(Monomial(lead)) != 0;
}

bool strictly_monotone(const std::vector<Rational>& r) {
    bool up = true, down = true;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1])) up = false;
        if (!(r[i] < r[i - 1])) down = false;
    }
    return up || down;
}

ValueEstimate window_interval(const std::vector<Rational>& r, const Rational& tol) {
    auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    bool tight = *hi - *lo < tol;
    return ValueEstimate::interval(*lo, *hi, tight ? ValueStatus::Converging : ValueStatus::Undecided, false);
}

} // namespace

Analyzer::Analyzer(TransformSequence seq, Polynomial normalizer, Params params)
    : seq_(std::move(seq)), normalizer_(std::move(normalizer)), params_(std::move(params)) {
    params_.validate();
    if (normalizer_.dimension() != seq_.dimension()) fail(ErrorCode::DimensionMismatch, "normalizer dimension differs from the ring");
    if (normalizer_.is_zero()) fail(ErrorCode::InvalidNormalizer, "the normalizer must be nonzero");
}

Polynomial Analyzer::one() const { return Polynomial::constant(seq_.dimension(), Rational(1)); }

TrackedElement Analyzer::tracked(const Polynomial& a) const { return track(a, seq_, params_.origin, params_.horizon); }

EValue Analyzer::e_value(const Polynomial& a) const {
    TrackedElement t = tracked(a);
    const StageRecord& last = t.stages.back();
    EValue e;
    e.value = static_cast<unsigned long>(last.ord_transform);
    e.window = params_.window;
    if (last.ord_transform == 0) {
        e.certainty = Certainty::Certified;
        e.reason = "transform is the unit ideal";
        return e;
    }
    if (settled_monomial(last.transform, seq_, last.n)) {
        e.certainty = Certainty::Certified;
        e.reason = "transform is a passive monomial times a unit";
        return e;
    }
    const std::size_t w = params_.window;
    for (std::size_t i = t.stages.size() - w; i < t.stages.size(); ++i) {
        if (t.stages[i].ord_transform != last.ord_transform) {
            fail(ErrorCode::NotStabilized, "transform order still changing within the last " + std::to_string(w) +
                                               " stages (stage " + std::to_string(t.stages[i].n) + ": " +
                                               std::to_string(t.stages[i].ord_transform) + ", stage " +
                                               std::to_string(last.n) + ": " + std::to_string(last.ord_transform) + ")");
        }
    }
    e.certainty = Certainty::Heuristic;
    e.reason = "constant over the window";
    return e;
}

EValue Analyzer::e_of_quotient(const Polynomial& a, const Polynomial& b) const {
    EValue ea = e_value(a), eb = e_value(b);
    EValue out;
    out.value = ea.value - eb.value;
    out.window = params_.window;
    out.certainty = ea.certified() && eb.certified() ? Certainty::Certified : Certainty::Heuristic;
    out.reason = ea.certified() ? eb.reason : ea.reason;
    return out;
}

bool Analyzer::n_primary_check(const Polynomial& a) const {
    if (e_value(a).value != 0) return false;
    TrackedElement t = tracked(a);
    for (std::size_t i = t.stages.size() - params_.window; i < t.stages.size(); ++i) {
        if (t.stages[i].ord_a <= 0) return false;
    }
    return true;
}

void Analyzer::require_valid_normalizer() const {
    bool ok = false;
    try {
        ok = n_primary_check(normalizer_);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::NotStabilized) throw;
        fail(ErrorCode::InvalidNormalizer, std::string("normalizer cannot be confirmed: ") + err.what());
    }
    if (!ok) {
        fail(ErrorCode::InvalidNormalizer, "normalizer " + to_string(normalizer_, seq_.variables()) +
                                               " is not N-primary (needs e = 0 and positive order)");
    }
}

std::vector<Rational> Analyzer::ratios(const Polynomial& a, const Polynomial* b) const {
    TrackedElement ta = tracked(a);
    TrackedElement tx = tracked(normalizer_);
    std::optional<TrackedElement> tb;
    if (b) tb = tracked(*b);
    std::vector<Rational> out;
    for (std::size_t i = ta.stages.size() - params_.window; i < ta.stages.size(); ++i) {
        Integer num = ta.stages[i].ord_a - (tb ? tb->stages[i].ord_a : Integer(0));
        Rational r(num, tx.stages[i].ord_a);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

ValueEstimate Analyzer::w_ratio(const Polynomial& a) const { return w_ratio(a, one()); }

ValueEstimate Analyzer::w_ratio(const Polynomial& a, const Polynomial& b) const {
    require_valid_normalizer();
    std::vector<Rational> r = ratios(a, &b);
    const Rational& last = r.back();
    if (abs(last) > params_.guard) {
        ValueEstimate v = ValueEstimate::infinity(last > 0 ? 1 : -1, false);
        v.note = "ratio exceeds the divergence guard";
        return v;
    }

    std::optional<EValue> e;
    try {
        e = e_of_quotient(a, b);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::NotStabilized) throw;
    }
    const SequenceRule* rule = seq_.rule();
    if (rule && rule->tau_diverges() && e && e->value != 0) {
        ValueEstimate v = ValueEstimate::infinity(e->value > 0 ? 1 : -1, e->certified());
        v.note = "e != 0 on a sequence whose pivot values never shrink";
        return v;
    }
    if (std::all_of(r.begin(), r.end(), [&](const Rational& x) { return x == last; })) {
        return ValueEstimate::exact_value(QuadraticIrrational(last), ValueStatus::Converging, false);
    }
    if (strictly_monotone(r) && e && e->value != 0 && tau().kind == ValueKind::PlusInfinity) {
        ValueEstimate v = ValueEstimate::infinity(e->value > 0 ? 1 : -1, false);
        v.note = "monotone ratios with e != 0 while tau diverges";
        return v;
    }
    return window_interval(r, params_.tolerance);
}

std::optional<std::vector<QuadraticIrrational>> Analyzer::pivot_values() const {
    const SequenceRule* rule = seq_.rule();
    if (!rule) return std::nullopt;
    return rule->exact_pivot_values(params_.horizon);
}

ValueEstimate Analyzer::series_raw(const Polynomial& a) const {
    auto pv = pivot_values();
    if (!pv) fail(ErrorCode::Internal, "series without pivot values");
    TrackedElement t = tracked(a);
    QuadraticIrrational partial;
    for (std::size_t i = 0; i + 1 < t.stages.size(); ++i) {
        const auto& s = t.stages[i];
        if (s.ord_transform) partial += qi(Integer(static_cast<unsigned long>(s.ord_transform))) * (*pv)[s.n];
    }
    const StageRecord& last = t.stages.back();
    if (last.ord_transform == 0) return ValueEstimate::exact_value(partial, ValueStatus::Exact, true);

    const SequenceRule* rule = seq_.rule();
    std::optional<EValue> e;
    try {
        e = e_value(a);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::NotStabilized) throw;
    }
    if (rule->tau_diverges()) {
        if (e && e->certified()) return ValueEstimate::infinity(1, true);
        return ValueEstimate::infinity(1, false);
    }
    auto tau = rule->exact_tau();
    if (e && e->certified() && tau) {
        QuadraticIrrational head;
        for (std::size_t n = 0; n < params_.horizon; ++n) head += (*pv)[n];
        return ValueEstimate::exact_value(partial + qi(e->value) * (*tau - head), ValueStatus::Exact, true);
    }
    if (auto tail = rule->tail_bound(params_.horizon)) {
        Rational lo = partial.lower_bound();
        Rational hi = partial.upper_bound() + Rational(static_cast<unsigned long>(last.ord_transform)) * *tail;
        return ValueEstimate::interval(lo, hi, hi - lo < params_.tolerance ? ValueStatus::Converging : ValueStatus::Undecided, true);
    }
    fail(ErrorCode::Internal, "rule exposes pivot values without a tail bound");
}

std::optional<QuadraticIrrational> Analyzer::normalizer_scale() const {
    auto pv = pivot_values();
    if (!pv) return std::nullopt;
    if (params_.origin == 0 && normalizer_ == Polynomial::variable(seq_.dimension(), seq_.move(0).pivot)) {
        return QuadraticIrrational(Rational(1));
    }
    ValueEstimate s = series_raw(normalizer_);
    if (!s.exact || s.exact->sign() <= 0) return std::nullopt;
    return s.exact;
}

std::optional<std::vector<Rational>> Analyzer::series_partials(const Polynomial& a) const {
    auto pv = pivot_values();
    if (!pv) return std::nullopt;
    auto s = normalizer_scale();
    if (!s) return std::nullopt;
    TrackedElement t = tracked(a);
    std::vector<Rational> out;
    QuadraticIrrational partial;
    for (const auto& st : t.stages) {
        out.push_back((partial / *s).lower_bound());
        if (st.n < pv->size() && st.ord_transform) partial += qi(Integer(static_cast<unsigned long>(st.ord_transform))) * (*pv)[st.n];
    }
    return out;
}

std::optional<QuadraticIrrational> Analyzer::w_exact(const Polynomial& a) const {
    if (!pivot_values()) return std::nullopt;
    auto s = normalizer_scale();
    if (!s) return std::nullopt;
    ValueEstimate raw = series_raw(a);
    if (!raw.exact) return std::nullopt;
    return *raw.exact / *s;
}

ValueEstimate Analyzer::w_series(const Polynomial& a) const {
    if (a.is_zero()) fail(ErrorCode::ZeroElement, "w of zero is +inf by convention; series needs a nonzero element");
    Classification c = classify();
    if (c.verdict == Verdict::NonArchimedean) {
        fail(ErrorCode::NonArchimedeanSequence, "the w-series needs an archimedean sequence (" + c.reason + ")");
    }
    if (pivot_values()) {
        if (auto s = normalizer_scale()) {
            ValueEstimate raw = series_raw(a);
            if (raw.exact) return ValueEstimate::exact_value(*raw.exact / *s, raw.status, raw.certified);
            if (s->is_rational()) return scale(raw, 1 / s->to_rational());
            QuadraticIrrational inv = QuadraticIrrational(Rational(1)) / *s;
            return ValueEstimate::interval(raw.lo * inv.lower_bound(), raw.hi * inv.upper_bound(), raw.status, raw.certified);
        }
    }
    return w_ratio(a);
}

ValueEstimate Analyzer::w_series(const Polynomial& a, const Polynomial& b) const { return w_series(a) - w_series(b); }

ValueEstimate Analyzer::tau() const {
    require_valid_normalizer();
    const SequenceRule* rule = seq_.rule();
    if (rule && rule->tau_diverges()) {
        ValueEstimate v = ValueEstimate::infinity(1, true);
        v.note = "rule: every pivot value is bounded below by a positive constant";
        return v;
    }
    if (rule) {
        auto exact = rule->exact_tau();
        auto pv = pivot_values();
        auto s = normalizer_scale();
        if (exact && pv && s) {
            QuadraticIrrational head;
            for (const auto& v : *pv) head += v;
            auto tail = rule->tail_bound(params_.horizon);
            if (*exact < head || (tail && QuadraticIrrational(*tail) + head < *exact)) {
                fail(ErrorCode::Internal, "rule tau " + exact->to_string() + " contradicts its own pivot values");
            }
            ValueEstimate v = ValueEstimate::exact_value(*exact / *s, ValueStatus::Exact, true);
            v.note = "rule value, consistent with the partial sum up to the horizon";
            return v;
        }
    }

    // Generic: T_h = sum_{n<h} ord_h(x_n) / ord_h(x̂) over the window.
    TrackedElement tx = tracked(normalizer_);
    PivotOrderTable table(seq_.dimension());
    std::vector<Rational> partials;
    const std::size_t first = params_.horizon - params_.window + 1;
    for (std::size_t n = params_.origin; n < params_.horizon; ++n) {
        table.advance(seq_.move(n));
        std::size_t h = n + 1;
        if (h < first) continue;
        Integer total = 0;
        for (std::size_t i = 0; i < table.size(); ++i) total += table.order(i);
        Rational t(total, tx.at(h).ord_a);
        t.canonicalize();
        partials.push_back(t);
    }
    if (partials.back() > params_.guard) {
        ValueEstimate v = ValueEstimate::infinity(1, false);
        v.note = "partial sums exceed the divergence guard";
        return v;
    }
    const std::size_t k = partials.size();
    Rational first_step = partials[1] - partials[0];
    Rational last_step = partials[k - 1] - partials[k - 2];
    if (last_step > 0 && last_step >= first_step && partials.back() - partials.front() >= params_.tolerance) {
        ValueEstimate v = ValueEstimate::infinity(1, false);
        v.note = "partial sums grow without decaying increments";
        return v;
    }
    return window_interval(partials, params_.tolerance);
}

Classification Analyzer::classify() const {
    Classification c;
    c.tau = tau();
    if (c.tau.kind == ValueKind::PlusInfinity) {
        c.verdict = Verdict::NonArchimedean;
        c.certified = c.tau.certified;
        c.reason = c.tau.note.empty() ? "tau diverges" : c.tau.note;
        return c;
    }
    if (c.tau.is_exact() || (c.tau.certified && c.tau.status != ValueStatus::Undecided)) {
        c.verdict = Verdict::Archimedean;
        c.certified = c.tau.certified;
        c.reason = "tau is finite";
        return c;
    }
    // probes: a parameter with e > 0 and ratios past the guard
    for (std::size_t v = 0; v < seq_.dimension(); ++v) {
        Polynomial probe = Polynomial::variable(seq_.dimension(), v);
        try {
            if (e_value(probe).value == 0) continue;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::NotStabilized) throw;
            continue;
        }
        if (abs(ratios(probe, nullptr).back()) > params_.guard) {
            c.verdict = Verdict::NonArchimedean;
            c.reason = "probe " + seq_.variables()[v] + " has w past the divergence guard";
            return c;
        }
    }
    if (c.tau.status == ValueStatus::Converging) {
        c.verdict = Verdict::Archimedean;
        c.reason = "tau partial sums settle within tolerance";
        return c;
    }
    c.reason = "tau partial sums neither settle nor exceed the guard";
    return c;
}

BoundaryValue Analyzer::boundary_value_arch(const Polynomial& a, const Polynomial& b) const {
    Classification c = classify();
    if (c.verdict == Verdict::NonArchimedean) {
        fail(ErrorCode::NonArchimedeanSequence, "boundary values (w, -e) need an archimedean sequence");
    }
    BoundaryValue out;
    out.mode = BoundaryValue::Mode::Archimedean;
    out.e_component = -e_of_quotient(a, b).value;
    out.w = w_series(a, b);
    return out;
}

BoundaryValue Analyzer::boundary_value_nonarch(const Polynomial& a, const Polynomial& z) const {
    Classification c = classify();
    if (c.verdict == Verdict::Archimedean) {
        fail(ErrorCode::ArchimedeanSequence, "the composite boundary value needs a non-archimedean sequence");
    }
    EValue ea = e_value(a), ez = e_value(z);
    if (ez.value <= 0) fail(ErrorCode::BadUniformizer, "uniformizer has e = " + ez.value.get_str() + ", needs e > 0");
    if (ea.value % ez.value != 0) {
        fail(ErrorCode::BadUniformizer, "e(z) = " + ez.value.get_str() + " does not divide e(a) = " + ea.value.get_str());
    }
    Integer k = ea.value / ez.value;
    BoundaryValue out;
    out.mode = BoundaryValue::Mode::NonArchimedean;
    out.e_component = k;
    out.w = w_ratio(a, z.pow(k.get_ui()));
    return out;
}

bool Analyzer::p_infinity_check(const Polynomial& a) const {
    Classification c = classify();
    if (c.verdict == Verdict::Archimedean) fail(ErrorCode::ArchimedeanSequence, "P-infinity is empty on archimedean sequences");
    return w_ratio(a).kind == ValueKind::PlusInfinity;
}

bool Analyzer::almost_integral_witness(const Polynomial& a, const Polynomial& y) const {
    Classification c = classify();
    if (c.verdict == Verdict::NonArchimedean) {
        fail(ErrorCode::NonArchimedeanSequence, "the almost-integral witness needs an archimedean sequence");
    }
    if (a.is_zero() || y.is_zero()) fail(ErrorCode::ZeroElement, "witness elements must be nonzero");
    if (!n_primary_check(y)) fail(ErrorCode::Precondition, "y must generate an N-primary ideal");
    if (e_value(a).value <= 0) return false;

    auto wa = w_exact(a), wy = w_exact(y);
    if (wa && wy) {
        if (!wa->is_rational() && !wy->is_rational() && wa->radicand() != wy->radicand()) return false;
        return *wa == *wy;
    }
    switch (compare(w_series(a), w_series(y), params_.tolerance)) {
    case Ordering::Equal: return true;
    case Ordering::Less:
    case Ordering::Greater: return false;
    case Ordering::Incomparable: break;
    }
    fail(ErrorCode::UndecidedEquality, "w-enclosures overlap but equality cannot be certified");
}

TauBound Analyzer::tau_upper_bound(const std::vector<Polynomial>& ys) const {
    if (ys.size() < 2) fail(ErrorCode::Precondition, "the tau bound needs at least two elements");
    ValueEstimate sum = ValueEstimate::exact_value(QuadraticIrrational(Rational(0)), ValueStatus::Exact, true);
    for (const auto& y : ys) sum = sum + w_series(y);
    TauBound out;
    out.bound = scale(sum, Rational(1, static_cast<long>(ys.size() - 1)));
    out.tau = tau();
    out.tau_vs_bound = compare(out.tau, out.bound);
    out.bound_violated = out.tau_vs_bound == Ordering::Greater;
    return out;
}

} // namespace shannon
