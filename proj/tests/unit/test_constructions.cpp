#include <gtest/gtest.h>

#include <gmpxx.h>

#include <chrono>
#include <functional>

#include "../oracles.hpp"
#include "shannon/constructions.hpp"
#include "shannon/error.hpp"

using namespace shannon;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& err) {
        return err.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::Internal;
}

// Floating recursion sigma_{j+1} = 2^e (sigma_j - floor sigma_j) at 1024 bits.
struct FloatBlock {
    long floor;
    unsigned e;
};

std::vector<FloatBlock> float_blocks(unsigned radicand, unsigned scale, std::size_t count) {
    mpf_class s(0, 1024);
    s = sqrt(mpf_class(radicand, 1024)) * scale;
    std::vector<FloatBlock> out;
    for (std::size_t j = 0; j < count; ++j) {
        mpf_class f(0, 1024);
        f = floor(s);
        long fl = f.get_si();
        mpf_class frac(s - f, 1024);
        unsigned e = 2;
        while (frac * (1UL << e) <= 2) ++e;
        out.push_back({fl, e});
        s = frac * (1UL << e);
    }
    return out;
}

bool power_of_two_denominator(const Rational& r) {
    Integer den = r.get_den();
    return (den & (den - 1)) == 0;
}

} // namespace

TEST(Block76, SqrtEight) {
    auto [moves, rec] = example76_block(QI::sqrt(8));
    EXPECT_EQ(rec.d, 0u);
    EXPECT_EQ(rec.e, 2u);
    EXPECT_EQ(moves.size(), 5u);  // d + 1 + (2^e - 1) + 1
    EXPECT_EQ(moves[0], Move::shifted(2, 0, 1, 1));
    for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(moves[i], Move::plain(2, 1));
    EXPECT_EQ(moves[4], Move::shifted(2, 0, 1, 1));
}

TEST(Block76, FloorThree) {
    auto [moves, rec] = example76_block(QI::sqrt(10));
    EXPECT_EQ(rec.d, 1u);
    EXPECT_EQ(moves[0], Move::plain(2, 0));
    Rational sub = 0;
    for (std::size_t n = 0; n <= rec.d; ++n) sub += rec.value_at(n);
    EXPECT_EQ(sub, 2);
}

TEST(Block76, ThreeDimensionalLeavesZAlone) {
    auto [moves, rec] = example76_block(QI::sqrt(8), 3);
    for (const auto& mv : moves) {
        EXPECT_EQ(mv.shifts.size(), 3u);
        EXPECT_EQ(mv.shifts[2], 0);
        EXPECT_NE(mv.pivot, 2u);
    }
}

TEST(Block76, RejectsSigma) {
    EXPECT_EQ(code_of([] { example76_block(QI(Rational(5, 2))); }), ErrorCode::SigmaOutOfRange);
    EXPECT_EQ(code_of([] { example76_block(QI::parse("(1+sqrt(2))/2")); }), ErrorCode::SigmaOutOfRange);
    EXPECT_EQ(code_of([] { example77_sequence(QI(Rational(3))); }), ErrorCode::SigmaOutOfRange);
    EXPECT_EQ(code_of([] { cic3d_sequence(QI::parse("sqrt(2)")); }), ErrorCode::SigmaOutOfRange);
}

TEST(Block76, EnforcesMinimumExponent) {
    // frac(sigma) > 1/2 would allow e = 1; the construction keeps e >= 2
    auto [moves, rec] = example76_block(QI::parse("2 + (sqrt(3))/2"));
    EXPECT_EQ(rec.e, 2u);
}

TEST(Block77, RecursionMatchesFloatOracle) {
    auto seq = example77_sequence(QI::sqrt(8));
    const BlockRule* rule = block_rule(seq);
    ASSERT_NE(rule, nullptr);
    auto ref = float_blocks(2, 2, 8);
    std::size_t start = 0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
        BlockRecord b = rule->block(j);
        EXPECT_EQ(b.sigma.floor(), ref[j].floor) << j;
        EXPECT_EQ(b.d, static_cast<std::size_t>(ref[j].floor - 2)) << j;
        EXPECT_EQ(b.e, ref[j].e) << j;
        EXPECT_EQ(b.start, start);
        EXPECT_EQ(b.length(), b.d + 1 + (std::size_t(1) << b.e));
        start = b.end;
    }
}

TEST(Block77, SigmaOne) {
    auto seq = example77_sequence(QI::sqrt(8));
    const BlockRule* rule = block_rule(seq);
    EXPECT_EQ(rule->block(1).sigma, QI(-8, 8, 2, 1));
    EXPECT_EQ(rule->block(1).d, 1u);
}

TEST(Block77, BlockAtStage) {
    auto seq = example77_sequence(QI::sqrt(8));
    const BlockRule* rule = block_rule(seq);
    EXPECT_EQ(rule->block_at(0).index, 0u);
    EXPECT_EQ(rule->block_at(4).index, 0u);
    EXPECT_EQ(rule->block_at(5).index, 1u);
    EXPECT_EQ(rule->block_at(15).index, 2u);
    EXPECT_EQ(rule->block_at(20).index, 3u);
}

TEST(Block77, PivotValuesAreDyadicAndMatchSolver) {
    auto seq = example77_sequence(QI::sqrt(8));
    auto pv = seq.rule()->exact_pivot_values(120);
    ASSERT_TRUE(pv);
    auto sol = solve_pivot_values(seq.prefix(121), 2);
    EXPECT_FALSE(sol.inconsistent_stage);
    for (std::size_t n = 0; n < 120; ++n) {
        ASSERT_TRUE((*pv)[n].is_rational());
        Rational v = (*pv)[n].to_rational();
        EXPECT_TRUE(power_of_two_denominator(v)) << n;
        ASSERT_TRUE(sol.values[n]) << n;
        EXPECT_EQ(*sol.values[n], v) << n;
    }
}

TEST(Block77, TailBoundCoversRemainder) {
    auto seq = example77_sequence(QI::sqrt(8));
    auto pv = *seq.rule()->exact_pivot_values(150);
    for (std::size_t from : {0u, 3u, 5u, 17u, 40u}) {
        QI rest = QI::sqrt(8);
        for (std::size_t n = 0; n < from; ++n) rest -= pv[n];
        auto tail = seq.rule()->tail_bound(from);
        ASSERT_TRUE(tail);
        EXPECT_LE(rest, QI(*tail)) << from;
        EXPECT_GT(rest.sign(), 0);
    }
}

TEST(Block77, Passivity) {
    auto seq = cic3d_sequence(QI::sqrt(8));
    EXPECT_TRUE(seq.variable_passive_from(2, 0));
    EXPECT_FALSE(seq.variable_passive_from(1, 0));
    EXPECT_FALSE(seq.variable_passive_from(0, 100));
}

TEST(Verify, SqrtEightBlocks) {
    auto seq = example77_sequence(QI::sqrt(8));
    auto v = verify_block_sums(seq, 3);
    ASSERT_EQ(v.blocks.size(), 3u);
    EXPECT_TRUE(v.pass());
    EXPECT_EQ(*v.blocks[0].sum, 2);
    EXPECT_EQ(*v.blocks[0].next_pivot_value, Rational(1, 4));
    EXPECT_EQ(*v.blocks[1].sub_sum, Rational(1, 2));
    EXPECT_EQ(*v.blocks[1].sum, Rational(3, 4));
}

TEST(Verify, TamperedListFailsAtBlock) {
    auto seq = example77_sequence(QI::sqrt(8));
    const BlockRule* rule = block_rule(seq);
    std::vector<BlockRecord> claimed = {rule->block(0), rule->block(1), rule->block(2)};
    std::vector<Move> moves = seq.prefix(claimed.back().end + 1);
    moves.erase(moves.begin() + static_cast<long>(claimed[1].start + 2));
    auto tampered = TransformSequence::explicit_list(seq.variables(), moves);
    auto v = verify_block_sums(tampered, claimed);
    EXPECT_FALSE(v.pass());
    ASSERT_TRUE(v.first_failure);
    EXPECT_EQ(*v.first_failure, 1u);
    EXPECT_TRUE(v.blocks[0].pass());
}

TEST(Verify, NeedsBlockRule) {
    try {
        verify_block_sums(builtin_family("fibonacci"), 2);
        ADD_FAILURE() << "expected Precondition";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), ErrorCode::Precondition);
    }
}

TEST(Defects, IdentityAndBounds) {
    auto seq = example77_sequence(QI::sqrt(8));
    auto rows = defect_table(*block_rule(seq), 6);
    ASSERT_EQ(rows.size(), 7u);
    auto ref = float_blocks(2, 2, 7);
    mpf_class s(0, 1024);
    s = sqrt(mpf_class(8, 1024));
    mpf_class partial(0, 1024);
    mpf_class u(1, 1024);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        EXPECT_TRUE(rows[j].identity_holds) << j;
        mpf_class defect(s - partial, 1024);
        EXPECT_NEAR(defect.get_d(), rows[j].defect.to_double(), 1e-12) << j;
        EXPECT_EQ(rows[j].bound, Rational(u.get_d())) << j;
        if (j >= 1) EXPECT_TRUE(rows[j].below_previous_bound) << j;
        partial += u * ref[j].floor;
        u /= (1UL << ref[j].e);
    }
}

TEST(Families, Builtins) {
    auto fib = builtin_family("fibonacci");
    EXPECT_EQ(fib.move(0).pivot, 0u);
    EXPECT_EQ(fib.move(1).pivot, 1u);
    auto f3 = builtin_family("fibonacci3d");
    EXPECT_EQ(f3.dimension(), 3u);
    EXPECT_TRUE(f3.variable_passive_from(2, 0));
    auto dir = builtin_family("directional");
    EXPECT_EQ(dir.move(17).pivot, 0u);
    EXPECT_TRUE(dir.rule()->tau_diverges());
    EXPECT_EQ(code_of([] { builtin_family("lucas"); }), ErrorCode::UnknownFamily);
}

TEST(Families, FibonacciPivotValuesMatchSolverRatios) {
    // w(x_n) = phi^-n: consecutive values differ by the gap rule of monomial moves
    auto fib = builtin_family("fibonacci");
    auto pv = *fib.rule()->exact_pivot_values(20);
    for (std::size_t n = 2; n < 20; ++n) EXPECT_EQ(pv[n - 2], pv[n - 1] + pv[n]) << n;
    EXPECT_EQ(pv[0], QI(Rational(1)));
}

TEST(Timing, VerifySixBlocksQuickly) {
    auto t0 = std::chrono::steady_clock::now();
    auto v = verify_block_sums(example77_sequence(QI::sqrt(8)), 6);
    auto dt = std::chrono::steady_clock::now() - t0;
    EXPECT_TRUE(v.pass());
    EXPECT_LT(std::chrono::duration<double>(dt).count(), 1.0);
}
