#include <limits>

#include "shannon/constructions.hpp"
#include "shannon/error.hpp"

namespace shannon {

namespace {

constexpr std::size_t kX = 0;
constexpr std::size_t kY = 1;
constexpr unsigned kMaxE = 60;

void require_sigma(const QuadraticIrrational& sigma) {
    if (sigma.is_rational()) fail(ErrorCode::SigmaOutOfRange, "sigma must be irrational, got " + sigma.to_string());
    if (sigma <= QuadraticIrrational(Rational(2))) {
        fail(ErrorCode::SigmaOutOfRange, "sigma must exceed 2, got " + sigma.to_string());
    }
}

// Minimal e >= 2 with 2^e * frac > 2.
unsigned choose_e(const QuadraticIrrational& frac) {
    const QuadraticIrrational two(Rational(2));
    for (unsigned e = 2; e <= kMaxE; ++e) {
        if (QuadraticIrrational(pow2(e)) * frac > two) return e;
    }
    fail(ErrorCode::Overflow, "block exponent exceeds 2^" + std::to_string(kMaxE) + " moves");
}

BlockRecord make_block(const QuadraticIrrational& sigma, std::size_t index, std::size_t start, const Rational& value) {
    require_sigma(sigma);
    BlockRecord rec;
    rec.index = index;
    rec.sigma = sigma;
    Integer fl = sigma.floor();
    rec.d = static_cast<std::size_t>(fl.get_ui()) - 2;
    rec.e = choose_e(sigma.fractional_part());
    rec.start = start;
    std::size_t len = rec.d + (std::size_t{1} << rec.e) + 1;
    if (start > std::numeric_limits<std::size_t>::max() - len) fail(ErrorCode::Overflow, "stage index overflow");
    rec.end = start + len;
    rec.pivot_value = value;
    return rec;
}

Move block_move(const BlockRecord& rec, std::size_t n, std::size_t dimension) {
    std::size_t t = n - rec.start;
    if (t < rec.d) return Move::plain(dimension, kX);
    if (t == rec.d || t + 1 == rec.length()) return Move::shifted(dimension, kX, kY, Rational(1));
    return Move::plain(dimension, kY);
}

} // namespace

Rational BlockRecord::value_at(std::size_t n) const {
    if (n < start || n >= end) fail(ErrorCode::Internal, "stage outside block");
    if (n - start <= d) return pivot_value;
    return pivot_value * pow2(-static_cast<long>(e));
}

std::pair<std::vector<Move>, BlockRecord> example76_block(const QuadraticIrrational& sigma, std::size_t dimension) {
    if (dimension < 2) fail(ErrorCode::DimensionMismatch, "blocks need at least two variables");
    BlockRecord rec = make_block(sigma, 0, 0, Rational(1));
    std::vector<Move> moves;
    moves.reserve(rec.length());
    for (std::size_t n = rec.start; n < rec.end; ++n) moves.push_back(block_move(rec, n, dimension));
    return {std::move(moves), rec};
}

BlockRule::BlockRule(QuadraticIrrational sigma, std::size_t dimension) : sigma_(std::move(sigma)), dimension_(dimension) {
    if (dimension_ != 2 && dimension_ != 3) fail(ErrorCode::DimensionMismatch, "block rules exist in dimension 2 and 3");
    require_sigma(sigma_);
    blocks_.push_back(make_block(sigma_, 0, 0, Rational(1)));
}

void BlockRule::extend_to_block(std::size_t j) const {
    while (blocks_.size() <= j) {
        const BlockRecord& last = blocks_.back();
        QuadraticIrrational next = QuadraticIrrational(pow2(last.e)) * last.sigma.fractional_part();
        if (next <= QuadraticIrrational(Rational(2))) fail(ErrorCode::Internal, "sigma recursion left (2, oo)");
        blocks_.push_back(make_block(next, last.index + 1, last.end, last.pivot_value * pow2(-static_cast<long>(last.e))));
    }
}

void BlockRule::extend_to_stage(std::size_t n) const {
    while (blocks_.back().end <= n) extend_to_block(blocks_.size());
}

BlockRecord BlockRule::block(std::size_t j) const {
    std::lock_guard lock(mutex_);
    extend_to_block(j);
    return blocks_[j];
}

BlockRecord BlockRule::block_at(std::size_t n) const {
    std::lock_guard lock(mutex_);
    extend_to_stage(n);
    std::size_t lo = 0, hi = blocks_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (blocks_[mid].start <= n) lo = mid;
        else hi = mid;
    }
    return blocks_[lo];
}

Move BlockRule::move(std::size_t n) const { return block_move(block_at(n), n, dimension_); }

std::optional<std::vector<QuadraticIrrational>> BlockRule::exact_pivot_values(std::size_t count) const {
    std::vector<QuadraticIrrational> out;
    out.reserve(count);
    std::size_t n = 0;
    for (std::size_t j = 0; n < count; ++j) {
        BlockRecord rec = block(j);
        for (; n < rec.end && n < count; ++n) out.emplace_back(rec.value_at(n));
    }
    return out;
}

// Within block j the remaining values are exact. Later blocks have
// sigma < 4, so each sums to at most 3u and u shrinks by 4 per block:
// everything after block j is at most 4u_{j+1}.
std::optional<Rational> BlockRule::tail_bound(std::size_t from) const {
    BlockRecord rec = block_at(from);
    Rational rest = 0;
    for (std::size_t n = from; n < rec.end; ++n) rest += rec.value_at(n);
    return rest + 4 * rec.pivot_value * pow2(-static_cast<long>(rec.e));
}

bool BlockRule::variable_passive_from(std::size_t variable, std::size_t) const { return variable == 2 && dimension_ == 3; }

TransformSequence example77_sequence(const QuadraticIrrational& sigma) {
    return TransformSequence::rule_driven(default_variable_names(2), std::make_shared<BlockRule>(sigma, 2));
}

TransformSequence cic3d_sequence(const QuadraticIrrational& sigma) {
    return TransformSequence::rule_driven(default_variable_names(3), std::make_shared<BlockRule>(sigma, 3));
}

const BlockRule* block_rule(const TransformSequence& seq) { return dynamic_cast<const BlockRule*>(seq.rule()); }

std::vector<DefectRow> defect_table(const BlockRule& rule, std::size_t blocks) {
    std::vector<DefectRow> rows;
    QuadraticIrrational partial;
    std::optional<Rational> previous;
    for (std::size_t j = 0; j <= blocks; ++j) {
        BlockRecord rec = rule.block(j);
        DefectRow row;
        row.boundary = j;
        row.stage = rec.start;
        row.defect = rule.sigma() - partial;
        row.bound = rec.pivot_value;
        row.previous_bound = previous;
        row.below_bound = row.defect < QuadraticIrrational(row.bound);
        row.below_previous_bound = previous && row.defect < QuadraticIrrational(*previous);
        row.identity_holds = row.defect == rec.sigma * QuadraticIrrational(rec.pivot_value);
        rows.push_back(row);
        for (std::size_t n = rec.start; n < rec.end; ++n) partial += QuadraticIrrational(rec.value_at(n));
        previous = rec.pivot_value;
    }
    return rows;
}

} // namespace shannon
