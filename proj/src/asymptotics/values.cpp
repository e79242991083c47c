#include <algorithm>
#include <map>

#include "shannon/asymptotics.hpp"
#include "shannon/error.hpp"

namespace shannon {

namespace {

int rank(ValueStatus s) {
    switch (s) {
    case ValueStatus::Exact: return 0;
    case ValueStatus::Converging: return 1;
    case ValueStatus::Diverging: return 2;
    case ValueStatus::Undecided: return 3;
    }
    return 3;
}

ValueStatus weaker(ValueStatus a, ValueStatus b) { return rank(a) >= rank(b) ? a : b; }

bool same_field(const QuadraticIrrational& a, const QuadraticIrrational& b) {
    return a.is_rational() || b.is_rational() || a.radicand() == b.radicand();
}

} // namespace

void Params::validate() const {
    if (window < 2) fail(ErrorCode::Config, "window must be at least 2");
    if (horizon < origin + window) {
        fail(ErrorCode::Config, "horizon " + std::to_string(horizon) + " leaves fewer than window=" +
                                    std::to_string(window) + " stages after the origin");
    }
    if (guard <= 0) fail(ErrorCode::Config, "guard must be positive");
    if (tolerance <= 0) fail(ErrorCode::Config, "tolerance must be positive");
}

std::string to_string(const EValue& e) {
    std::string out = e.value.get_str() + " (" + (e.certified() ? "certified" : "heuristic");
    if (!e.certified()) out += ", window " + std::to_string(e.window);
    return out + ")";
}

const char* to_string(ValueKind kind) {
    switch (kind) {
    case ValueKind::ExactRational: return "ExactRational";
    case ValueKind::ExactQuadratic: return "ExactQuadratic";
    case ValueKind::Interval: return "Interval";
    case ValueKind::PlusInfinity: return "PlusInfinity";
    case ValueKind::MinusInfinity: return "MinusInfinity";
    }
    return "?";
}

const char* to_string(ValueStatus status) {
    switch (status) {
    case ValueStatus::Exact: return "Exact";
    case ValueStatus::Converging: return "Converging";
    case ValueStatus::Diverging: return "Diverging";
    case ValueStatus::Undecided: return "Undecided";
    }
    return "?";
}

ValueEstimate ValueEstimate::exact_value(const QuadraticIrrational& v, ValueStatus status, bool certified) {
    ValueEstimate out;
    out.kind = v.is_rational() ? ValueKind::ExactRational : ValueKind::ExactQuadratic;
    out.status = status;
    out.certified = certified;
    out.lo = v.lower_bound();
    out.hi = v.upper_bound();
    out.exact = v;
    return out;
}

ValueEstimate ValueEstimate::interval(Rational lo, Rational hi, ValueStatus status, bool certified) {
    if (lo > hi) fail(ErrorCode::Internal, "interval with lo > hi");
    ValueEstimate out;
    out.kind = ValueKind::Interval;
    out.status = status;
    out.certified = certified;
    out.lo = std::move(lo);
    out.hi = std::move(hi);
    return out;
}

ValueEstimate ValueEstimate::infinity(int sign, bool certified) {
    ValueEstimate out;
    out.kind = sign > 0 ? ValueKind::PlusInfinity : ValueKind::MinusInfinity;
    out.status = ValueStatus::Diverging;
    out.certified = certified;
    return out;
}

bool ValueEstimate::contains(const QuadraticIrrational& v) const {
    if (is_infinite()) return false;
    if (exact) return same_field(*exact, v) && *exact == v;
    return QuadraticIrrational(lo) <= v && v <= QuadraticIrrational(hi);
}

std::string ValueEstimate::to_string() const {
    switch (kind) {
    case ValueKind::PlusInfinity: return "+inf";
    case ValueKind::MinusInfinity: return "-inf";
    case ValueKind::ExactRational: return shannon::to_string(exact->to_rational());
    case ValueKind::ExactQuadratic: return exact->to_string() + " ~ " + to_decimal(lo, 12);
    case ValueKind::Interval: break;
    }
    return "[" + to_decimal(lo, 12) + ", " + to_decimal(hi, 12) + "]";
}

ValueEstimate operator-(const ValueEstimate& a) {
    if (a.kind == ValueKind::PlusInfinity) return ValueEstimate::infinity(-1, a.certified);
    if (a.kind == ValueKind::MinusInfinity) return ValueEstimate::infinity(1, a.certified);
    if (a.exact) return ValueEstimate::exact_value(-*a.exact, a.status, a.certified);
    return ValueEstimate::interval(-a.hi, -a.lo, a.status, a.certified);
}

ValueEstimate operator+(const ValueEstimate& a, const ValueEstimate& b) {
    const bool cert = a.certified && b.certified;
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite() && a.kind != b.kind) {
            ValueEstimate out = ValueEstimate::interval(0, 0, ValueStatus::Undecided, false);
            out.kind = ValueKind::Interval;
            out.note = "+inf and -inf cancel in an undetermined way";
            return out;
        }
        return ValueEstimate::infinity(a.is_infinite() ? (a.kind == ValueKind::PlusInfinity ? 1 : -1)
                                                       : (b.kind == ValueKind::PlusInfinity ? 1 : -1),
                                       cert);
    }
    const ValueStatus st = weaker(a.status, b.status);
    if (a.exact && b.exact && same_field(*a.exact, *b.exact)) return ValueEstimate::exact_value(*a.exact + *b.exact, st, cert);
    return ValueEstimate::interval(a.lo + b.lo, a.hi + b.hi, st, cert);
}

ValueEstimate operator-(const ValueEstimate& a, const ValueEstimate& b) { return a + (-b); }

ValueEstimate scale(const ValueEstimate& a, const Rational& factor) {
    if (factor == 0) return ValueEstimate::exact_value(QuadraticIrrational(Rational(0)), ValueStatus::Exact, true);
    if (a.is_infinite()) {
        int s = (a.kind == ValueKind::PlusInfinity ? 1 : -1) * (factor > 0 ? 1 : -1);
        return ValueEstimate::infinity(s, a.certified);
    }
    if (a.exact) return ValueEstimate::exact_value(*a.exact * QuadraticIrrational(factor), a.status, a.certified);
    Rational x = a.lo * factor, y = a.hi * factor;
    return ValueEstimate::interval(std::min(x, y), std::max(x, y), a.status, a.certified);
}

const char* to_string(Ordering o) {
    switch (o) {
    case Ordering::Less: return "<";
    case Ordering::Equal: return "=";
    case Ordering::Greater: return ">";
    case Ordering::Incomparable: return "incomparable";
    }
    return "?";
}

Ordering compare(const ValueEstimate& a, const ValueEstimate& b) {
    auto inf_sign = [](const ValueEstimate& v) {
        return v.kind == ValueKind::PlusInfinity ? 1 : v.kind == ValueKind::MinusInfinity ? -1 : 0;
    };
    int sa = inf_sign(a), sb = inf_sign(b);
    if (sa || sb) {
        if (sa == sb) return Ordering::Equal;
        return sa < sb ? Ordering::Less : Ordering::Greater;
    }
    if (a.exact && b.exact && same_field(*a.exact, *b.exact)) {
        auto c = *a.exact <=> *b.exact;
        return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
    }
    if (a.hi < b.lo) return Ordering::Less;
    if (a.lo > b.hi) return Ordering::Greater;
    return Ordering::Incomparable;
}

Ordering compare(const ValueEstimate& a, const ValueEstimate& b, const Rational& slack) {
    Ordering c = compare(a, b);
    if (c == Ordering::Equal || c == Ordering::Incomparable || (a.certified && b.certified)) return c;
    if (a.kind == ValueKind::PlusInfinity || a.kind == ValueKind::MinusInfinity ||
        b.kind == ValueKind::PlusInfinity || b.kind == ValueKind::MinusInfinity) {
        return c;
    }
    Rational gap = c == Ordering::Less ? b.lo - a.hi : a.lo - b.hi;
    return gap > slack ? c : Ordering::Incomparable;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Archimedean: return "Archimedean";
    case Verdict::NonArchimedean: return "NonArchimedean";
    case Verdict::Undecided: return "Undecided";
    }
    return "?";
}

std::string BoundaryValue::to_string() const {
    if (mode == Mode::Archimedean) return "(" + w.to_string() + ", " + e_component.get_str() + ")";
    return "(" + e_component.get_str() + ", " + w.to_string() + ")";
}

Ordering compare(const BoundaryValue& a, const BoundaryValue& b) {
    if (a.mode != b.mode) return Ordering::Incomparable;
    auto by_int = [](const Integer& x, const Integer& y) {
        return x < y ? Ordering::Less : x > y ? Ordering::Greater : Ordering::Equal;
    };
    Ordering first, second;
    if (a.mode == BoundaryValue::Mode::Archimedean) {
        first = compare(a.w, b.w);
        second = by_int(a.e_component, b.e_component);
    } else {
        first = by_int(a.e_component, b.e_component);
        second = compare(a.w, b.w);
    }
    return first == Ordering::Equal ? second : first;
}

std::string Dependence::to_string() const {
    switch (kind) {
    case Kind::Dependent: return "Dependent(" + d.get_str() + ")";
    case Kind::Independent: return "Independent";
    case Kind::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// Coordinates of a quadratic value in the basis 1, sqrt(D_1), sqrt(D_2), ...
using Coords = std::vector<Rational>;

Coords coordinates(const QuadraticIrrational& v, const std::vector<Integer>& radicands) {
    Coords c(radicands.size() + 1, Rational(0));
    c[0] = Rational(v.p(), v.r());
    c[0].canonicalize();
    if (!v.is_rational()) {
        auto it = std::find(radicands.begin(), radicands.end(), v.radicand());
        Rational q(v.q(), v.r());
        q.canonicalize();
        c[1 + static_cast<std::size_t>(it - radicands.begin())] = q;
    }
    return c;
}

// Row echelon basis of the integer lattice spanned by `rows`.
std::vector<std::vector<Integer>> lattice_basis(std::vector<std::vector<Integer>> rows, std::size_t cols) {
    std::vector<std::vector<Integer>> basis;
    for (std::size_t col = 0; col < cols && !rows.empty(); ++col) {
        // Euclid on column col until at most one row is nonzero there
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(Rational(rows[i][col])) < abs(Rational(rows[best][col]))) best = i;
            }
            if (best == rows.size()) break;
            bool reduced = false;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
                for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= q * rows[best][k];
                reduced = true;
            }
            if (!reduced) {
                basis.push_back(rows[best]);
                rows.erase(rows.begin() + static_cast<long>(best));
                break;
            }
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [&](const auto& r) { return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; }); }),
                   rows.end());
    }
    return basis;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

} // namespace

Dependence rational_dependence(const ValueEstimate& tau, const ValueGroup& group) {
    Dependence out;
    if (!tau.exact) {
        out.reason = tau.is_infinite() ? "tau is infinite" : "tau is only known as an interval";
        return out;
    }
    const QuadraticIrrational& t = *tau.exact;

    if (group.kind == ValueGroup::Kind::Dyadic) {
        if (!t.is_rational()) {
            out.kind = Dependence::Kind::Independent;
            out.reason = "every multiple of the quadratic irrational " + t.to_string() + " is irrational, hence not dyadic";
            return out;
        }
        Integer den = t.to_rational().get_den();
        while (mpz_even_p(den.get_mpz_t())) den /= 2;
        out.kind = Dependence::Kind::Dependent;
        out.d = den;
        out.reason = "odd part of the denominator";
        return out;
    }
    if (group.kind != ValueGroup::Kind::Generators || group.generators.empty()) {
        out.reason = "value group not described";
        return out;
    }

    std::vector<Integer> radicands;
    auto note_field = [&](const QuadraticIrrational& v) {
        if (!v.is_rational() && std::find(radicands.begin(), radicands.end(), v.radicand()) == radicands.end()) {
            radicands.push_back(v.radicand());
        }
    };
    note_field(t);
    for (const auto& g : group.generators) note_field(g);
    const std::size_t cols = radicands.size() + 1;

    std::vector<Coords> gens;
    for (const auto& g : group.generators) gens.push_back(coordinates(g, radicands));
    Coords target = coordinates(t, radicands);

    Integer common = 1;
    for (const auto& c : gens) {
        for (const auto& x : c) common = lcm(common, x.get_den());
    }
    std::vector<std::vector<Integer>> rows;
    for (const auto& c : gens) {
        std::vector<Integer> row;
        for (const auto& x : c) row.push_back(Rational(x * common).get_num());
        rows.push_back(std::move(row));
    }
    auto basis = lattice_basis(rows, cols);

    // solve target*common = sum c_i basis_i over Q by back-substitution on the echelon form
    Coords rest;
    for (const auto& x : target) rest.push_back(x * common);
    Integer d = 1;
    for (const auto& b : basis) {
        std::size_t lead = 0;
        while (b[lead] == 0) ++lead;
        Rational c = rest[lead] / Rational(b[lead]);
        d = lcm(d, c.get_den());
        for (std::size_t k = 0; k < cols; ++k) rest[k] -= c * Rational(b[k]);
    }
    bool in_span = std::all_of(rest.begin(), rest.end(), [](const Rational& x) { return x == 0; });
    if (!in_span) {
        out.kind = Dependence::Kind::Independent;
        out.reason = "tau lies outside the rational span of the generators";
        return out;
    }
    out.kind = Dependence::Kind::Dependent;
    out.d = d;
    out.reason = "tau is a rational combination of the generators";
    return out;
}

} // namespace shannon
