#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shannon/polynomial.hpp"
#include "shannon/quadratic.hpp"
#include "shannon/transform.hpp"

namespace shannon {

struct Params {
    std::size_t origin = 0;
    std::size_t horizon = 64;
    std::size_t window = 8;
    Rational guard = 1'000'000;
    Rational tolerance = Rational(1, 1'000'000);

    void validate() const;
};

enum class Certainty { Certified, Heuristic };

struct EValue {
    Integer value;
    Certainty certainty = Certainty::Heuristic;
    std::size_t window = 0;
    std::string reason;

    bool certified() const { return certainty == Certainty::Certified; }
};

std::string to_string(const EValue& e);

enum class ValueKind { ExactRational, ExactQuadratic, Interval, PlusInfinity, MinusInfinity };
enum class ValueStatus { Exact, Converging, Diverging, Undecided };

const char* to_string(ValueKind kind);
const char* to_string(ValueStatus status);

/// w or tau. Exact kinds also carry a rational bracket [lo, hi]; intervals
/// are closed. `certified` marks values backed by exact reasoning rather
/// than a finite-window heuristic.
struct ValueEstimate {
    ValueKind kind = ValueKind::Interval;
    ValueStatus status = ValueStatus::Undecided;
    bool certified = false;
    Rational lo;
    Rational hi;
    std::optional<QuadraticIrrational> exact;
    std::string note;

    static ValueEstimate exact_value(const QuadraticIrrational& v, ValueStatus status, bool certified);
    static ValueEstimate interval(Rational lo, Rational hi, ValueStatus status, bool certified);
    static ValueEstimate infinity(int sign, bool certified);

    bool is_exact() const { return kind == ValueKind::ExactRational || kind == ValueKind::ExactQuadratic; }
    bool is_infinite() const { return kind == ValueKind::PlusInfinity || kind == ValueKind::MinusInfinity; }
    Rational width() const { return hi - lo; }
    bool contains(const QuadraticIrrational& v) const;

    std::string to_string() const;
};

ValueEstimate operator+(const ValueEstimate& a, const ValueEstimate& b);
ValueEstimate operator-(const ValueEstimate& a);
ValueEstimate operator-(const ValueEstimate& a, const ValueEstimate& b);
ValueEstimate scale(const ValueEstimate& a, const Rational& factor);

enum class Ordering { Less, Equal, Greater, Incomparable };
const char* to_string(Ordering o);

/// Exact when both sides are exact; disjoint enclosures order strictly;
/// anything else is Incomparable.
Ordering compare(const ValueEstimate& a, const ValueEstimate& b);
// As above, but uncertified intervals only separate when the gap exceeds slack.
Ordering compare(const ValueEstimate& a, const ValueEstimate& b, const Rational& slack);

enum class Verdict { Archimedean, NonArchimedean, Undecided };
const char* to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::Undecided;
    bool certified = false;
    ValueEstimate tau;
    std::string reason;
};

/// Archimedean: (w(q), -e(q)). Non-archimedean: (e(a)/e(z), w(a/z^k)).
struct BoundaryValue {
    enum class Mode { Archimedean, NonArchimedean };
    Mode mode = Mode::Archimedean;
    ValueEstimate w;
    Integer e_component;

    std::string to_string() const;
};

Ordering compare(const BoundaryValue& a, const BoundaryValue& b);

struct Dependence {
    enum class Kind { Dependent, Independent, Unknown };
    Kind kind = Kind::Unknown;
    Integer d;  // least positive multiplier when Dependent
    std::string reason;

    std::string to_string() const;
};

Dependence rational_dependence(const ValueEstimate& tau, const ValueGroup& group);

struct TauBound {
    ValueEstimate bound;
    ValueEstimate tau;
    /// Ordering of tau against the bound.
    Ordering tau_vs_bound = Ordering::Incomparable;
    bool bound_violated = false;
};

/// Asymptotic invariants of elements along one sequence, normalized by x̂.
class Analyzer {
public:
    Analyzer(TransformSequence seq, Polynomial normalizer, Params params = {});

    const TransformSequence& sequence() const noexcept { return seq_; }
    const Params& params() const noexcept { return params_; }
    const Polynomial& normalizer() const noexcept { return normalizer_; }

    TrackedElement tracked(const Polynomial& a) const;

    EValue e_value(const Polynomial& a) const;
    EValue e_of_quotient(const Polynomial& a, const Polynomial& b) const;

    ValueEstimate w_ratio(const Polynomial& a) const;
    ValueEstimate w_ratio(const Polynomial& a, const Polynomial& b) const;
    ValueEstimate w_series(const Polynomial& a) const;
    ValueEstimate w_series(const Polynomial& a, const Polynomial& b) const;

    ValueEstimate tau() const;
    Classification classify() const;

    BoundaryValue boundary_value_arch(const Polynomial& a, const Polynomial& b) const;
    BoundaryValue boundary_value_nonarch(const Polynomial& a, const Polynomial& z) const;

    bool n_primary_check(const Polynomial& a) const;
    bool p_infinity_check(const Polynomial& a) const;
    bool almost_integral_witness(const Polynomial& a, const Polynomial& y) const;
    TauBound tau_upper_bound(const std::vector<Polynomial>& ys) const;

    /// Lower ends of the partial w-series before each tracked stage, when the
    /// rule supplies exact pivot values.
    std::optional<std::vector<Rational>> series_partials(const Polynomial& a) const;

    /// Exact w when the rule supplies pivot values and the tail is settled.
    std::optional<QuadraticIrrational> w_exact(const Polynomial& a) const;

private:
    void require_valid_normalizer() const;
    std::optional<std::vector<QuadraticIrrational>> pivot_values() const;
    std::vector<Rational> ratios(const Polynomial& a, const Polynomial* b) const;
    std::optional<QuadraticIrrational> normalizer_scale() const;
    ValueEstimate series_raw(const Polynomial& a) const;
    Polynomial one() const;

    TransformSequence seq_;
    Polynomial normalizer_;
    Params params_;
};

} // namespace shannon
