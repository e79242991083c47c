#include "shannon/transform.hpp"

#include "shannon/error.hpp"

namespace shannon {

Move Move::plain(std::size_t dimension, std::size_t pivot) {
    Move mv;
    mv.pivot = pivot;
    mv.shifts.assign(dimension, Rational(0));
    return mv;
}

Move Move::shifted(std::size_t dimension, std::size_t pivot, std::size_t target, const Rational& shift) {
    Move mv = plain(dimension, pivot);
    mv.shifts.at(target) = shift;
    return mv;
}

void validate(const Move& mv, std::size_t dimension) {
    if (mv.shifts.size() != dimension) {
        fail(ErrorCode::DimensionMismatch, "move has " + std::to_string(mv.shifts.size()) + " shifts for dimension " +
                                               std::to_string(dimension));
    }
    if (mv.pivot >= dimension) fail(ErrorCode::DimensionMismatch, "move pivot out of range");
    if (mv.shifts[mv.pivot] != 0) fail(ErrorCode::Config, "the pivot variable cannot be shifted");
}

std::vector<Polynomial> move_images(const Move& mv, std::size_t dimension) {
    validate(mv, dimension);
    std::vector<Polynomial> images;
    images.reserve(dimension);
    Polynomial pivot = Polynomial::variable(dimension, mv.pivot);
    for (std::size_t j = 0; j < dimension; ++j) {
        if (j == mv.pivot) {
            images.push_back(pivot);
            continue;
        }
        Polynomial img(dimension);
        img.add_term(Monomial::unit(dimension, mv.pivot).with_exponent(j, 1), Rational(1));
        img.add_term(Monomial::unit(dimension, mv.pivot), mv.shifts[j]);
        images.push_back(std::move(img));
    }
    return images;
}

std::string to_string(const Move& mv, std::span<const std::string> variables) {
    std::string out = "pivot " + variables[mv.pivot];
    for (std::size_t j = 0; j < mv.shifts.size(); ++j) {
        if (mv.shifts[j] != 0) out += ", " + variables[j] + "+=" + to_string(mv.shifts[j]);
    }
    return out;
}

Polynomial apply_move(const Polynomial& f, const Move& mv) {
    auto images = move_images(mv, f.dimension());
    return substitute(f, images);
}

PrincipalTransform transform_principal(const Polynomial& f, const Move& mv) {
    if (f.is_zero()) fail(ErrorCode::ZeroElement, "the transform of the zero ideal is undefined");
    Exponent k = ord(f).value();
    return {exact_divide_by_pivot_power(apply_move(f, mv), mv.pivot, k), k};
}

std::string to_string(const ValueGroup& group) {
    switch (group.kind) {
    case ValueGroup::Kind::Dyadic:
        return "dyadic rationals";
    case ValueGroup::Kind::Generators: {
        std::string out = "span{";
        for (std::size_t i = 0; i < group.generators.size(); ++i) {
            if (i) out += ", ";
            out += group.generators[i].to_string();
        }
        return out + "}";
    }
    case ValueGroup::Kind::Unknown:
        break;
    }
    return "unknown";
}

std::optional<std::vector<QuadraticIrrational>> SequenceRule::exact_pivot_values(std::size_t) const { return std::nullopt; }
std::optional<QuadraticIrrational> SequenceRule::exact_tau() const { return std::nullopt; }
std::optional<Rational> SequenceRule::tail_bound(std::size_t) const { return std::nullopt; }
bool SequenceRule::variable_passive_from(std::size_t, std::size_t) const { return false; }

TransformSequence::TransformSequence(Kind kind, std::vector<std::string> variables)
    : kind_(kind), variables_(std::move(variables)) {
    if (variables_.size() < 2) fail(ErrorCode::Config, "ring dimension must be at least 2");
}

TransformSequence TransformSequence::explicit_list(std::vector<std::string> variables, std::vector<Move> moves) {
    TransformSequence seq(Kind::Explicit, std::move(variables));
    for (const auto& mv : moves) validate(mv, seq.dimension());
    seq.moves_ = std::move(moves);
    return seq;
}

TransformSequence TransformSequence::periodic(std::vector<std::string> variables, std::vector<Move> period) {
    if (period.empty()) fail(ErrorCode::Config, "periodic sequence needs at least one move");
    TransformSequence seq(Kind::Periodic, std::move(variables));
    for (const auto& mv : period) validate(mv, seq.dimension());
    seq.moves_ = std::move(period);
    return seq;
}

TransformSequence TransformSequence::rule_driven(std::vector<std::string> variables,
                                                 std::shared_ptr<const SequenceRule> rule) {
    if (!rule) fail(ErrorCode::Config, "missing sequence rule");
    TransformSequence seq(Kind::RuleDriven, std::move(variables));
    if (rule->dimension() != seq.dimension()) {
        fail(ErrorCode::DimensionMismatch, "rule '" + rule->name() + "' has dimension " +
                                               std::to_string(rule->dimension()));
    }
    seq.rule_ = std::move(rule);
    return seq;
}

std::optional<std::size_t> TransformSequence::length() const {
    if (kind_ == Kind::Explicit) return moves_.size();
    return std::nullopt;
}

Move TransformSequence::move(std::size_t n) const {
    switch (kind_) {
    case Kind::Explicit:
        if (n >= moves_.size()) {
            fail(ErrorCode::SequenceExhausted, "explicit sequence has " + std::to_string(moves_.size()) +
                                                   " moves; move " + std::to_string(n) + " requested");
        }
        return moves_[n];
    case Kind::Periodic:
        return moves_[n % moves_.size()];
    case Kind::RuleDriven: {
        Move mv = rule_->move(n);
        validate(mv, dimension());
        return mv;
    }
    }
    fail(ErrorCode::Internal, "unknown sequence kind");
}

std::vector<Move> TransformSequence::prefix(std::size_t count) const {
    std::vector<Move> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back(move(n));
    return out;
}

bool TransformSequence::variable_passive_from(std::size_t variable, std::size_t stage) const {
    switch (kind_) {
    case Kind::Explicit:
        return false;
    case Kind::Periodic:
        // one full period covers every future move
        for (const auto& mv : moves_) {
            if (mv.pivot == variable || mv.shifts[variable] != 0) return false;
        }
        return true;
    case Kind::RuleDriven:
        return rule_->variable_passive_from(variable, stage);
    }
    return false;
}

TransformSequence TransformSequence::renamed(std::vector<std::string> variables) const {
    if (variables.size() != dimension()) fail(ErrorCode::DimensionMismatch, "wrong number of variable names");
    TransformSequence out(*this);
    out.variables_ = std::move(variables);
    return out;
}

std::string to_string(TransformSequence::Kind kind) {
    switch (kind) {
    case TransformSequence::Kind::Explicit: return "explicit";
    case TransformSequence::Kind::Periodic: return "periodic";
    case TransformSequence::Kind::RuleDriven: return "rule";
    }
    return "?";
}

} // namespace shannon
