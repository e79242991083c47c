#include "shannon/constructions.hpp"
#include "shannon/error.hpp"

namespace shannon {

namespace {

// Pivots alternate x, y. The value of y is the golden ratio (limit of
// consecutive Fibonacci ratios), which makes the pivot values phi^-n.
class FibonacciRule final : public SequenceRule {
public:
    explicit FibonacciRule(std::size_t dimension) : dimension_(dimension) {}

    std::string name() const override { return dimension_ == 2 ? "fibonacci" : "fibonacci3d"; }
    std::size_t dimension() const override { return dimension_; }
    Move move(std::size_t n) const override { return Move::plain(dimension_, n % 2); }

    std::optional<std::vector<QuadraticIrrational>> exact_pivot_values(std::size_t count) const override {
        const QuadraticIrrational inv = QuadraticIrrational(Rational(1)) / QuadraticIrrational::golden_ratio();
        std::vector<QuadraticIrrational> out;
        out.reserve(count);
        QuadraticIrrational v(Rational(1));
        for (std::size_t n = 0; n < count; ++n) {
            out.push_back(v);
            v *= inv;
        }
        return out;
    }

    std::optional<QuadraticIrrational> exact_tau() const override {
        QuadraticIrrational phi = QuadraticIrrational::golden_ratio();
        return phi * phi;
    }

    // sum_{n >= from} phi^-n = phi^{2-from}
    std::optional<Rational> tail_bound(std::size_t from) const override {
        QuadraticIrrational phi = QuadraticIrrational::golden_ratio();
        QuadraticIrrational t = phi * phi;
        const QuadraticIrrational inv = QuadraticIrrational(Rational(1)) / phi;
        for (std::size_t n = 0; n < from; ++n) t *= inv;
        return t.upper_bound();
    }

    bool variable_passive_from(std::size_t variable, std::size_t) const override { return variable == 2; }

    ValueGroup value_group() const override {
        return ValueGroup::generated_by({QuadraticIrrational(Rational(1)), QuadraticIrrational::golden_ratio()});
    }

private:
    std::size_t dimension_;
};

// Constant pivot x: every pivot value is 1 and y is never touched.
class DirectionalRule final : public SequenceRule {
public:
    std::string name() const override { return "directional"; }
    std::size_t dimension() const override { return 2; }
    Move move(std::size_t) const override { return Move::plain(2, 0); }

    std::optional<std::vector<QuadraticIrrational>> exact_pivot_values(std::size_t count) const override {
        return std::vector<QuadraticIrrational>(count, QuadraticIrrational(Rational(1)));
    }
    bool tau_diverges() const override { return true; }
    bool variable_passive_from(std::size_t variable, std::size_t) const override { return variable == 1; }
};

} // namespace

TransformSequence builtin_family(const std::string& name) {
    if (name == "fibonacci") {
        return TransformSequence::rule_driven(default_variable_names(2), std::make_shared<FibonacciRule>(2));
    }
    if (name == "fibonacci3d") {
        return TransformSequence::rule_driven(default_variable_names(3), std::make_shared<FibonacciRule>(3));
    }
    if (name == "directional") {
        return TransformSequence::rule_driven(default_variable_names(2), std::make_shared<DirectionalRule>());
    }
    fail(ErrorCode::UnknownFamily, "unknown family '" + name + "' (expected fibonacci, directional or fibonacci3d)");
}

namespace {

bool is_dyadic(const Rational& r) {
    const Integer& den = r.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

} // namespace

BlockVerification verify_block_sums(const TransformSequence& seq, const std::vector<BlockRecord>& claimed) {
    BlockVerification out;
    if (claimed.empty()) return out;

    std::size_t wanted = claimed.back().end + 1;
    if (auto len = seq.length()) wanted = std::min(wanted, *len);
    std::vector<Move> moves = seq.prefix(wanted);
    PivotValueSolution sol = solve_pivot_values(moves, seq.dimension());

    auto value = [&](std::size_t n) -> std::optional<Rational> {
        if (n >= sol.values.size()) return std::nullopt;
        return sol.values[n];
    };
    auto range_sum = [&](std::size_t from, std::size_t to) -> std::optional<Rational> {
        Rational s = 0;
        for (std::size_t n = from; n < to; ++n) {
            auto v = value(n);
            if (!v) return std::nullopt;
            s += *v;
        }
        return s;
    };

    for (const auto& rec : claimed) {
        BlockCheck c;
        c.claimed = rec;
        const Rational u = rec.pivot_value;
        c.sub_sum = range_sum(rec.start, rec.start + rec.d + 1);
        c.sum = range_sum(rec.start, rec.end);
        c.next_pivot_value = value(rec.end);
        c.sub_sum_ok = c.sub_sum && *c.sub_sum == Rational(rec.sigma.floor() - 1) * u;
        c.sum_ok = c.sum && *c.sum == Rational(rec.sigma.floor()) * u;
        c.pivot_ok = c.next_pivot_value && *c.next_pivot_value == u * pow2(-static_cast<long>(rec.e));
        c.dyadic = true;
        for (std::size_t n = rec.start; n <= rec.end; ++n) {
            auto v = value(n);
            if (!v || !is_dyadic(*v)) c.dyadic = false;
        }
        if (sol.inconsistent_stage && *sol.inconsistent_stage <= rec.end) {
            c.sub_sum_ok = c.sum_ok = c.pivot_ok = false;
            c.detail = sol.problem;
        } else if (!c.sum) {
            c.detail = "pivot values in the block are not determined by the moves";
        } else if (!c.pass()) {
            c.detail = "block identities do not hold";
        }
        if (!c.pass() && !out.first_failure) out.first_failure = rec.index;
        out.blocks.push_back(std::move(c));
    }
    return out;
}

BlockVerification verify_block_sums(const TransformSequence& seq, std::size_t blocks) {
    const BlockRule* rule = block_rule(seq);
    if (!rule) fail(ErrorCode::Precondition, "block verification needs an example77 or cic3d sequence");
    std::vector<BlockRecord> claimed;
    for (std::size_t j = 0; j < blocks; ++j) claimed.push_back(rule->block(j));
    return verify_block_sums(seq, claimed);
}

} // namespace shannon
