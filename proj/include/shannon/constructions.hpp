#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shannon/quadratic.hpp"
#include "shannon/transform.hpp"

namespace shannon {

struct BlockRecord {
    std::size_t index = 0;
    std::size_t d = 0;
    unsigned e = 0;
    std::size_t start = 0;  // n_j
    std::size_t end = 0;    // n_{j+1}
    QuadraticIrrational sigma;
    Rational pivot_value;  // value of the first pivot of the block

    std::size_t length() const { return end - start; }
    /// Moves start..start+d all carry pivot_value; the rest pivot_value / 2^e.
    Rational value_at(std::size_t n) const;
};

/// One block of the finite construction for sigma_j > 2 irrational, in the
/// variables (x, y) of a ring of the given dimension. Returned record has
/// index 0, start 0 and pivot value 1.
std::pair<std::vector<Move>, BlockRecord> example76_block(const QuadraticIrrational& sigma, std::size_t dimension = 2);

/// Concatenated blocks with the recursion sigma_{j+1} = 2^{e_j} frac(sigma_j).
/// Blocks are generated lazily and cached; move(n) only depends on n.
class BlockRule final : public SequenceRule {
public:
    BlockRule(QuadraticIrrational sigma, std::size_t dimension);

    std::string name() const override { return dimension_ == 2 ? "example77" : "cic3d"; }
    std::size_t dimension() const override { return dimension_; }
    Move move(std::size_t n) const override;

    std::optional<std::vector<QuadraticIrrational>> exact_pivot_values(std::size_t count) const override;
    std::optional<QuadraticIrrational> exact_tau() const override { return sigma_; }
    std::optional<Rational> tail_bound(std::size_t from) const override;
    bool variable_passive_from(std::size_t variable, std::size_t stage) const override;
    ValueGroup value_group() const override { return ValueGroup::dyadic(); }

    const QuadraticIrrational& sigma() const noexcept { return sigma_; }
    BlockRecord block(std::size_t j) const;
    /// Block containing stage n.
    BlockRecord block_at(std::size_t n) const;

private:
    void extend_to_block(std::size_t j) const;
    void extend_to_stage(std::size_t n) const;

    QuadraticIrrational sigma_;
    std::size_t dimension_;
    mutable std::mutex mutex_;
    mutable std::vector<BlockRecord> blocks_;
};

TransformSequence example77_sequence(const QuadraticIrrational& sigma);
TransformSequence cic3d_sequence(const QuadraticIrrational& sigma);

/// fibonacci, directional or fibonacci3d.
TransformSequence builtin_family(const std::string& name);

/// The block rule behind an example77/cic3d sequence, or null.
const BlockRule* block_rule(const TransformSequence& seq);
const BlockRule* block_rule(TransformSequence&&) = delete;  // the rule lives inside the sequence

struct BlockCheck {
    BlockRecord claimed;
    std::optional<Rational> sub_sum;         // over the first d+1 moves
    std::optional<Rational> sum;             // over the whole block
    std::optional<Rational> next_pivot_value;
    bool sub_sum_ok = false;
    bool sum_ok = false;
    bool pivot_ok = false;
    bool dyadic = false;
    std::string detail;

    bool pass() const { return sub_sum_ok && sum_ok && pivot_ok && dyadic; }
};

struct BlockVerification {
    std::vector<BlockCheck> blocks;
    std::optional<std::size_t> first_failure;

    bool pass() const { return !first_failure && !blocks.empty(); }
};

/// Recomputes pivot values from the moves of `seq` (no rule metadata) and
/// checks each claimed block: sub-block sum (d_j+1)u_j, block sum
/// floor(sigma_j)u_j and next pivot value u_j/2^{e_j}, where u_j is the
/// claimed pivot value of block j.
BlockVerification verify_block_sums(const TransformSequence& seq, const std::vector<BlockRecord>& claimed);
BlockVerification verify_block_sums(const TransformSequence& seq, std::size_t blocks);

/// sigma minus the sum of pivot values before stage n_j, for j = 0..blocks.
struct DefectRow {
    std::size_t boundary = 0;  // j
    std::size_t stage = 0;     // n_j
    QuadraticIrrational defect;
    Rational bound;            // prod_{i<j} 2^-e_i
    std::optional<Rational> previous_bound;  // prod_{i<j-1} 2^-e_i, for j >= 1
    bool below_bound = false;
    bool below_previous_bound = false;
    bool identity_holds = false;  // defect == sigma_j * prod_{i<j} 2^-e_i
};

std::vector<DefectRow> defect_table(const BlockRule& rule, std::size_t blocks);

} // namespace shannon
