#pragma once

// Randomized invariant suites. Each suite returns the number of cases that
// ran, the number of failures and the first failure message, so the unit
// tests and the acceptance runner can share them.

#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "shannon/asymptotics.hpp"
#include "shannon/error.hpp"

namespace properties {

using namespace shannon;

struct Outcome {
    std::size_t cases = 0;
    std::size_t checked = 0;  // cases where the property applied
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && checked > 0; }
};

struct Case {
    std::size_t d;
    std::vector<Move> moves;
    TransformSequence seq;
};

inline constexpr std::size_t kHorizon = 32;

inline Case random_case(oracle::Generator& gen) {
    std::size_t d = gen.chance(0.5) ? 2 : 3;
    auto moves = gen.moves(d, kHorizon);
    auto seq = TransformSequence::explicit_list(default_variable_names(d), moves);
    return {d, std::move(moves), std::move(seq)};
}

// Runs `body` on `count` seeded cases. The body returns false when the
// property does not apply, and throws std::string on failure.
inline Outcome run_suite(std::uint64_t seed, std::size_t count,
                         const std::function<bool(oracle::Generator&, std::size_t)>& body) {
    Outcome out;
    for (std::size_t i = 0; i < count; ++i) {
        oracle::Generator gen(seed * 1'000'003 + i);
        ++out.cases;
        try {
            if (body(gen, i)) ++out.checked;
        } catch (const std::string& why) {
            if (out.failures++ == 0) out.first_failure = "case " + std::to_string(i) + ": " + why;
        } catch (const Error& err) {
            if (out.failures++ == 0) {
                out.first_failure = "case " + std::to_string(i) + ": " + to_string(err.code()) + ": " + err.what();
            }
        }
    }
    return out;
}

template <class T>
std::string str(const T& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw what;
}

/// ord(fg) = ord f + ord g, ord(f + g) >= min, in R_0 and at every stage.
inline Outcome ord_axioms(std::size_t count) {
    return run_suite(11, count, [](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        Polynomial f = gen.polynomial(c.d), g = gen.polynomial(c.d);
        require(ord(f * g).value() == ord(f).value() + ord(g).value(), "ord(fg) != ord f + ord g");
        require(ord(-f) == ord(f), "ord(-f) != ord f");
        Polynomial s = f + g;
        if (!s.is_zero()) require(ord(s) >= std::min(ord(f), ord(g)), "ord(f+g) < min");
        require(ord(Polynomial::constant(c.d, Rational(gen.pick(9) + 1))) == OrderValue(0), "unit order");

        auto tf = track(f, c.seq, 0, kHorizon), tg = track(g, c.seq, 0, kHorizon);
        auto tfg = track(f * g, c.seq, 0, kHorizon);
        std::optional<TrackedElement> ts;
        if (!s.is_zero()) ts = track(s, c.seq, 0, kHorizon);
        for (std::size_t n = 0; n <= kHorizon; ++n) {
            require(tfg.at(n).ord_a == tf.at(n).ord_a + tg.at(n).ord_a, "ord_n(fg) at stage " + str(n));
            if (ts) {
                require(ts->at(n).ord_a >= std::min(tf.at(n).ord_a, tg.at(n).ord_a), "ord_n(f+g) < min at stage " + str(n));
            }
        }
        return true;
    });
}

/// (fg)' = f' g' and apply_move(f) = pivot^k f' for one move, and the same
/// stage by stage along a sequence.
inline Outcome transform_identities(std::size_t count) {
    return run_suite(12, count, [](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        Polynomial f = gen.polynomial(c.d), g = gen.polynomial(c.d);
        for (std::size_t n = 0; n < 4; ++n) {
            const Move& mv = c.moves[n];
            auto pf = transform_principal(f, mv), pg = transform_principal(g, mv);
            auto pfg = transform_principal(f * g, mv);
            require(pfg.transform == pf.transform * pg.transform, "transform not multiplicative at move " + str(n));
            require(pfg.order == pf.order + pg.order, "orders not additive at move " + str(n));
            Polynomial rebuilt = Polynomial::variable(c.d, mv.pivot).pow(pf.order) * pf.transform;
            require(rebuilt == apply_move(f, mv), "reconstruction fails at move " + str(n));
            f = pf.transform;
            g = pg.transform;
            if (ord(f).value() == 0 || ord(g).value() == 0) break;
        }
        return true;
    });
}

/// ord_n(a_n) never increases.
inline Outcome nonincreasing_orders(std::size_t count) {
    return run_suite(13, count, [](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        auto t = track(gen.polynomial(c.d, 4, 4), c.seq, 0, kHorizon);
        for (std::size_t n = 1; n <= kHorizon; ++n) {
            require(t.at(n).ord_transform <= t.at(n - 1).ord_transform, "transform order rises at stage " + str(n));
        }
        return true;
    });
}

/// The sign of ord_n(a) - ord_n(b) is constant over the last stages.
inline Outcome eventual_sign(std::size_t count, std::size_t tail = 8) {
    return run_suite(14, count, [tail](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        Polynomial a = gen.polynomial(c.d, 3, 3, true), b = gen.polynomial(c.d, 3, 3, true);
        auto ta = track(a, c.seq, 0, kHorizon), tb = track(b, c.seq, 0, kHorizon);
        auto sign_at = [&](std::size_t n) { return sgn(Integer(ta.at(n).ord_a - tb.at(n).ord_a)); };
        int s = sign_at(kHorizon);
        for (std::size_t n = kHorizon - tail + 1; n < kHorizon; ++n) {
            require(sign_at(n) == s, "sign of ord_n(a) - ord_n(b) changes at stage " + str(n));
        }
        return true;
    });
}

/// e(fg) = e(f) + e(g) whenever all three values are settled.
inline Outcome e_additivity(std::size_t count) {
    return run_suite(15, count, [](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        Params p;
        p.horizon = kHorizon;
        Analyzer an(c.seq, Polynomial::variable(c.d, c.moves[0].pivot), p);
        Polynomial f = gen.polynomial(c.d), g = gen.polynomial(c.d);
        EValue ef, eg, efg;
        try {
            ef = an.e_value(f);
            eg = an.e_value(g);
            efg = an.e_value(f * g);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::NotStabilized) return false;
            throw;
        }
        require(efg.value == ef.value + eg.value, "e(fg) = " + efg.value.get_str() + " but e(f) + e(g) = " +
                                                      Integer(ef.value + eg.value).get_str());
        return true;
    });
}

/// ord_H(a) = sum_n ord_n(a_n) ord_H(pivot_n) + ord_H(a_H), with every
/// ingredient from the oracle and compared with the engine; small orders are
/// also checked by direct substitution.
inline Outcome series_consistency(std::size_t count, oracle::Exponent substitution_cap = 24) {
    return run_suite(16, count, [substitution_cap](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        Polynomial a = gen.polynomial(c.d);
        auto t = track(a, c.seq, 0, kHorizon);
        auto ref = oracle::series(a, c.moves, kHorizon);
        for (std::size_t n = 0; n <= kHorizon; ++n) {
            require(t.at(n).ord_transform == ref.ord_transform[n], "ord_n(a_n) differs at stage " + str(n));
            require(t.at(n).ord_a == ref.ord_a[n], "ord_n(a) differs at stage " + str(n) + ": engine " +
                                                       t.at(n).ord_a.get_str() + ", oracle " + ref.ord_a[n].get_str());
            if (t.at(n).ord_a <= substitution_cap) {
                auto direct = oracle::ord_by_substitution(a, c.moves, n, t.at(n).ord_a.get_ui() + 1);
                require(direct && Integer(static_cast<unsigned long>(*direct)) == t.at(n).ord_a,
                        "direct substitution disagrees at stage " + str(n));
            }
        }
        return true;
    });
}

/// w_ratio(x̂) is exactly 1 for a valid normalizer.
inline Outcome w_normalization(std::size_t count) {
    return run_suite(17, count, [](oracle::Generator& gen, std::size_t) {
        Case c = random_case(gen);
        Params p;
        p.horizon = kHorizon;
        // the first pivot always becomes a unit, so it is N-primary
        Polynomial x = Polynomial::variable(c.d, c.moves[0].pivot);
        if (gen.chance(0.5)) x = x * (Polynomial::constant(c.d, 1) + Polynomial::variable(c.d, gen.pick(c.d)));
        Analyzer an(c.seq, x, p);
        auto w = an.w_ratio(x);
        require(w.kind == ValueKind::ExactRational && w.exact && *w.exact == QuadraticIrrational(Rational(1)),
                "w(x) = " + w.to_string());
        return true;
    });
}

} // namespace properties
