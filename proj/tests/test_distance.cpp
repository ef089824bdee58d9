#include "qpunct/distance.hpp"
#include "qpunct/puncture.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qpunct;

namespace {

void expect_matches_oracle(const StabilizerCode& c) {
    const auto naive = oracle::naive_min_weight(c);
    const auto r = min_weight_words(c, {}, 1u << 20);
    ASSERT_FALSE(r.overflow);
    EXPECT_EQ(r.d, naive.d);
    EXPECT_EQ(r.pure, naive.pure);
    EXPECT_EQ(std::set<SympVec>(r.words.begin(), r.words.end()), naive.words);
    // one vector per projective class outside the stabilizer, or every nonzero class when k = 0
    const std::uint64_t q = c.field().p();
    const std::uint64_t vectors = c.k() > 0 ? detail::saturating_pow(q, c.n() + c.k()) - detail::saturating_pow(q, c.n() - c.k())
                                            : detail::saturating_pow(q, c.n()) - 1;
    const std::uint64_t expected = vectors / (q - 1);
    EXPECT_EQ(r.enumerated, expected);
}

}  // namespace

TEST(MinDistance, FiveQutritCode) {
    const auto r = min_weight_words(fixtures::qutrit5(), {}, 1000);
    EXPECT_EQ(r.d, 2u);
    EXPECT_TRUE(r.pure);
    EXPECT_EQ(r.words.size(), 10u);
}

TEST(MinDistance, FiveQutritWordsThroughFirstPair) {
    const PrimeField f(3);
    const auto r = min_weight_words(fixtures::qutrit5(), {}, 1000);
    std::set<SympVec> through;
    for (const auto& w : r.words)
        if (!w.pair(0).is_zero()) through.insert(w);
    const std::set<SympVec> listed{
        canonicalize(SympVec(f, {1, 0, 0, 1, 0}, {2, 0, 0, 0, 0})),
        canonicalize(SympVec(f, {1, 0, 1, 0, 0}, {2, 0, 0, 0, 0})),
        canonicalize(SympVec(f, {0, 1, 0, 0, 0}, {1, 1, 0, 0, 0})),
        canonicalize(SympVec(f, {0, 0, 0, 0, 2}, {1, 0, 0, 0, 2})),
    };
    EXPECT_EQ(through, listed);
}

TEST(MinDistance, FifteenQutritCode) {
    const auto r = min_weight_words(fixtures::qutrit15(), {}, 100000);
    EXPECT_EQ(r.d, 5u);
    EXPECT_TRUE(r.pure);
    EXPECT_FALSE(r.overflow);
    EXPECT_EQ(r.words.size(), 124u);
}

TEST(MinDistance, TwentyOneQubitCode) {
    const auto r = min_weight_words(fixtures::qubit21(), {}, 100000);
    EXPECT_EQ(r.d, 6u);
    EXPECT_TRUE(r.pure);
    EXPECT_EQ(r.words.size(), 756u);
}

TEST(MinDistance, AgreesWithNaiveEnumerationOnRandomCodes) {
    std::mt19937_64 rng(41);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t n = 1 + trial % 5;
            const std::size_t k = trial % (n + 1);
            if (detail::saturating_pow(p, n + k) > 200000) continue;
            expect_matches_oracle(oracle::random_code(rng, p, n, k));
        }
    }
}

TEST(MinDistance, AgreesWithBruteForceOnAllSmallQubitCodes) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t m = 0; m <= n; ++m)
            for (const auto& c : oracle::all_codes(2, n, m)) ASSERT_EQ(min_distance(c).d, oracle::brute_distance(c));
}

TEST(MinDistance, AgreesWithBruteForceOverSmallPrimes) {
    std::mt19937_64 rng(42);
    for (std::uint32_t p : {3u, 5u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = p == 3 ? 3 : 2;
            const auto c = oracle::random_code(rng, p, n, trial % (n + 1));
            EXPECT_EQ(min_distance(c).d, oracle::brute_distance(c));
        }
    }
}

TEST(MinDistance, BitslicedMatchesGeneric) {
    std::mt19937_64 rng(43);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto c = oracle::random_code(rng, p, 7, trial % 4);
            const auto fast = detail::run_min_weight(c, {}, 1u << 20, true, false);
            const auto slow = detail::run_min_weight(c, {}, 1u << 20, true, true);
            EXPECT_EQ(fast.d, slow.d);
            EXPECT_EQ(fast.pure, slow.pure);
            EXPECT_EQ(fast.words, slow.words);
            EXPECT_EQ(fast.smallest, slow.smallest);
        }
    }
}

TEST(MinDistance, WorkerCountDoesNotChangeResult) {
    std::mt19937_64 rng(44);
    std::vector<StabilizerCode> codes{fixtures::qutrit5()};
    for (int i = 0; i < 6; ++i) codes.push_back(oracle::random_code(rng, i % 2 ? 3 : 5, 5, 1 + i % 3));
    for (const auto& c : codes) {
        const auto one = min_weight_words(c, {}, 1u << 20);
        for (std::size_t w : {2u, 8u}) {
            EnumBudget b;
            b.workers = w;
            const auto many = min_weight_words(c, b, 1u << 20);
            EXPECT_EQ(many.d, one.d);
            EXPECT_EQ(many.words, one.words);
            EXPECT_EQ(many.pure, one.pure);
            EXPECT_EQ(many.enumerated, one.enumerated);
        }
    }
}

TEST(MinDistance, WordsAreCanonicalCentralAndOutsideStabilizer) {
    const auto c = fixtures::qutrit15();
    const auto r = min_weight_words(c, {}, 100000);
    const RowSpace stab(c.stab());
    const RowSpace cent(c.stacked());
    for (const auto& w : r.words) {
        EXPECT_EQ(symp_weight(w), r.d);
        EXPECT_EQ(canonicalize(w), w);
        EXPECT_TRUE(cent.contains(w.to_row()));
        EXPECT_FALSE(stab.contains(w.to_row()));
    }
    EXPECT_TRUE(std::is_sorted(r.words.begin(), r.words.end()));
    EXPECT_EQ(std::adjacent_find(r.words.begin(), r.words.end()), r.words.end());
}

TEST(MinDistance, CapTruncatesAndFlagsOverflow) {
    const auto r = min_weight_words(fixtures::qutrit15(), {}, 10);
    EXPECT_EQ(r.d, 5u);
    EXPECT_TRUE(r.overflow);
    EXPECT_LE(r.words.size(), 10u);
}

TEST(MinDistance, SmallestWordIsLeastCanonicalWord) {
    const auto c = fixtures::qutrit5();
    const auto all = min_weight_words(c, {}, 1000);
    const auto r = min_distance_with_smallest(c);
    ASSERT_TRUE(r.smallest);
    EXPECT_EQ(*r.smallest, all.words.front());
}

TEST(MinDistance, BudgetExceededReportsRequirement) {
    EnumBudget b;
    b.max_vectors = 1000;
    try {
        min_distance(fixtures::qutrit5(), b);
        FAIL();
    } catch (const BudgetExceeded& e) {
        EXPECT_EQ(e.required(), 2187u);
    }
    b.max_vectors = 2187;
    EXPECT_EQ(min_distance(fixtures::qutrit5(), b).d, 2u);
}

TEST(MinDistance, EarlyExitStopsAtThreshold) {
    EnumBudget b;
    b.max_weight = 6;
    const auto r = min_distance(fixtures::qubit21(), b);
    EXPECT_TRUE(r.early_exit);
    EXPECT_EQ(r.d, 6u);
    b.max_weight = 5;
    EXPECT_FALSE(min_distance(fixtures::qubit21(), b).early_exit);
    EXPECT_LT(r.enumerated, required_vectors(fixtures::qubit21()));
}

TEST(MinDistance, SingleQuditWithoutLogicals) {
    const PrimeField f(2);
    const auto c = StabilizerCode::from_stabilizer(f, 1, FpMatrix::from_rows(f, 2, {{1, 0}}));
    const auto r = min_weight_words(c, {}, 10);
    EXPECT_EQ(r.d, 1u);
    ASSERT_EQ(r.words.size(), 1u);
    EXPECT_EQ(r.words[0], SympVec(f, {1}, {0}));
}

TEST(MinDistance, ImpureCodeIsDetected) {
    // S_p = <X1 X2, Z1 Z2> on three qubits: d = 1 via the free third qubit, stabilizer weight 2.
    const PrimeField f(2);
    const auto c = StabilizerCode::from_stabilizer(f, 3, FpMatrix::from_rows(f, 6, {{1, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 0}}));
    EXPECT_EQ(min_distance(c).d, 1u);
    EXPECT_TRUE(min_distance(c).pure);
    std::mt19937_64 rng(45);
    std::size_t impure = 0;
    for (int i = 0; i < 200; ++i) {
        const auto r = oracle::random_code(rng, 2, 5, 1);
        const auto got = min_distance(r);
        const auto ref = oracle::naive_min_weight(r);
        ASSERT_EQ(got.pure, ref.pure);
        impure += !got.pure;
    }
    EXPECT_GT(impure, 0u);
}

TEST(MinDistance, PunctureLowersDistanceByAtMostOne) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 30; ++trial) {
        const auto c = oracle::random_code(rng, 3, 5, 1);
        const std::size_t d = min_distance(c).d;
        for (std::size_t i = 0; i < 5; ++i) {
            for (const auto& x : ProjPair::all(c.field())) {
                const auto out = puncture_detailed(c, i, x);
                if (out.code.k() == 0) continue;
                EXPECT_GE(min_distance(out.code).d + 1, d);
            }
        }
    }
}
