#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shannon/polynomial.hpp"
#include "shannon/quadratic.hpp"

namespace shannon {

/// One local quadratic transform. Variable j != pivot is replaced by
/// pivot * (variable j + shifts[j]); the pivot maps to itself.
struct Move {
    std::size_t pivot = 0;
    std::vector<Rational> shifts;

    static Move plain(std::size_t dimension, std::size_t pivot);
    static Move shifted(std::size_t dimension, std::size_t pivot, std::size_t target, const Rational& shift);

    bool operator==(const Move&) const = default;
};

void validate(const Move& mv, std::size_t dimension);
std::vector<Polynomial> move_images(const Move& mv, std::size_t dimension);
std::string to_string(const Move& mv, std::span<const std::string> variables);

Polynomial apply_move(const Polynomial& f, const Move& mv);

struct PrincipalTransform {
    Polynomial transform;
    Exponent order;
};

/// Transform of the principal ideal fR in the next ring: the moved element
/// divided by pivot^ord(f).
PrincipalTransform transform_principal(const Polynomial& f, const Move& mv);

/// Description of w(T^x) used by the rational dependence test.
struct ValueGroup {
    enum class Kind { Dyadic, Generators, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<QuadraticIrrational> generators;

    static ValueGroup dyadic() { return {Kind::Dyadic, {}}; }
    static ValueGroup generated_by(std::vector<QuadraticIrrational> gens) { return {Kind::Generators, std::move(gens)}; }
    static ValueGroup unknown() { return {}; }
};

std::string to_string(const ValueGroup& group);

/// Rule generating an infinite sequence. move(n) must be a pure function of n.
/// The optional metadata lets the asymptotics layer switch to exact mode;
/// pivot values are normalized so that the first pivot has value 1.
class SequenceRule {
public:
    virtual ~SequenceRule() = default;

    virtual std::string name() const = 0;
    virtual std::size_t dimension() const = 0;
    virtual Move move(std::size_t n) const = 0;

    virtual std::optional<std::vector<QuadraticIrrational>> exact_pivot_values(std::size_t count) const;
    virtual std::optional<QuadraticIrrational> exact_tau() const;
    /// Upper bound on the sum of pivot values from stage `from` onward.
    virtual std::optional<Rational> tail_bound(std::size_t from) const;
    virtual bool tau_diverges() const { return false; }
    /// True when the variable is never a pivot and never shifted from `stage` on.
    virtual bool variable_passive_from(std::size_t variable, std::size_t stage) const;
    virtual ValueGroup value_group() const { return ValueGroup::unknown(); }
};

class TransformSequence {
public:
    enum class Kind { Explicit, Periodic, RuleDriven };

    static TransformSequence explicit_list(std::vector<std::string> variables, std::vector<Move> moves);
    static TransformSequence periodic(std::vector<std::string> variables, std::vector<Move> period);
    static TransformSequence rule_driven(std::vector<std::string> variables, std::shared_ptr<const SequenceRule> rule);

    Kind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return variables_.size(); }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const SequenceRule* rule() const noexcept { return rule_.get(); }
    /// Number of moves for explicit lists, nothing for infinite sequences.
    std::optional<std::size_t> length() const;

    /// Throws SequenceExhausted past the end of an explicit list.
    Move move(std::size_t n) const;
    std::vector<Move> prefix(std::size_t count) const;

    bool variable_passive_from(std::size_t variable, std::size_t stage) const;

    /// Same moves under different variable names.
    TransformSequence renamed(std::vector<std::string> variables) const;

private:
    TransformSequence(Kind kind, std::vector<std::string> variables);

    Kind kind_;
    std::vector<std::string> variables_;
    std::vector<Move> moves_;
    std::shared_ptr<const SequenceRule> rule_;
};

std::string to_string(TransformSequence::Kind kind);

/// ord_n of the images of earlier pivots. The image of pivot x_i at any
/// later stage is a monomial times a unit, so only exponent vectors are kept.
class PivotOrderTable {
public:
    explicit PivotOrderTable(std::size_t dimension) : dimension_(dimension) {}

    /// Moves to the next stage: every stored image is pushed through `mv`
    /// and the current pivot is appended.
    void advance(const Move& mv);

    std::size_t size() const noexcept { return exponents_.size(); }
    /// ord at the current stage of the i-th recorded pivot.
    const Integer& order(std::size_t i) const { return orders_.at(i); }

private:
    std::size_t dimension_;
    std::vector<std::vector<Integer>> exponents_;
    std::vector<Integer> orders_;
};

struct StageRecord {
    std::size_t n = 0;
    Integer ord_a;
    Polynomial transform{2};
    Exponent ord_transform = 0;
};

/// Per-stage data of an element followed along a sequence. Once a transform
/// has order zero it is a unit and later transforms are stored as 1.
struct TrackedElement {
    std::size_t origin = 0;
    Polynomial element{2};
    std::vector<StageRecord> stages;

    const StageRecord& at(std::size_t n) const;
    std::size_t horizon() const { return stages.back().n; }
};

/// Follows a through stages origin..horizon. ord_n(a) is assembled from
/// the transform orders and the pivot image orders.
TrackedElement track(const Polynomial& a, const TransformSequence& seq, std::size_t origin, std::size_t horizon);

/// Pivot values derived from the moves alone: the first pivot has value 1,
/// an unshifted move subtracts the pivot value, and a shifted move forces
/// equal values. Undetermined values stay empty.
struct PivotValueSolution {
    std::vector<std::optional<Rational>> values;
    /// First stage whose pivot was not a valuation-minimal choice, if any.
    std::optional<std::size_t> inconsistent_stage;
    std::string problem;
};

PivotValueSolution solve_pivot_values(std::span<const Move> moves, std::size_t dimension);

} // namespace shannon
