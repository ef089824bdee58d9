#include "qpunct/code_io.hpp"
#include "qpunct/distance.hpp"
#include "qpunct/puncture.hpp"
#include "qpunct/search.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qpunct;

namespace {

MinWeightReport all_words(const StabilizerCode& c) { return min_weight_words(c, {}, 1u << 20); }

/// The code with one extra qudit fixed by the stabilizer (1|0) at the end.
StabilizerCode with_fixed_qudit(const StabilizerCode& c) {
    const PrimeField f = c.field();
    const std::size_t n = c.n();
    FpMatrix stab(f, 0, 2 * (n + 1));
    for (std::size_t r = 0; r < c.stab().rows(); ++r) {
        std::vector<residue> row(2 * (n + 1), 0);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = c.stab()(r, i);
            row[n + 1 + i] = c.stab()(r, n + i);
        }
        stab.append_row(row);
    }
    std::vector<residue> x(2 * (n + 1), 0);
    x[n] = 1;
    stab.append_row(x);
    return StabilizerCode::from_stabilizer(f, n + 1, stab);
}

std::size_t choose(std::size_t n, std::size_t t) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < t; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST(Avoidance, FiveQutritCodeAvoidsOneOneAtFirstIndex) {
    const auto c = fixtures::qutrit5();
    const auto res = find_avoidance(c, all_words(c));
    const auto x = ProjPair::canonical(c.field(), 1, 1);
    bool found = false;
    for (const auto& r : res) found = found || (r.index == 0 && r.pair == x && r.guaranteed_d == 2);
    EXPECT_TRUE(found);
    // (0|1) is carried by a minimum-weight word at the first index
    for (const auto& r : res) EXPECT_FALSE(r.index == 0 && r.pair == ProjPair::canonical(c.field(), 0, 1));
}

TEST(Avoidance, IndexWhereEveryWordVanishesAdmitsEveryPair) {
    const auto c = with_fixed_qudit(fixtures::qutrit5());
    const auto words = all_words(c);
    ASSERT_EQ(words.d, 2u);
    for (const auto& w : words.words) ASSERT_TRUE(w.pair(5).is_zero());
    std::set<ProjPair> pairs;
    for (const auto& r : find_avoidance(c, words))
        if (r.index == 5) pairs.insert(r.pair);
    EXPECT_EQ(pairs.size(), 4u);
    for (const auto& x : ProjPair::all(c.field())) EXPECT_GE(min_distance(puncture(c, 5, x)).d, 2u);
}

TEST(Avoidance, EveryResultHoldsUnderPuncturing) {
    std::mt19937_64 rng(51);
    std::size_t checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = oracle::random_pure_code(rng, 2, 6, 1 + trial % 2);
        for (const auto& r : find_avoidance(c, all_words(c))) {
            EXPECT_GE(oracle::naive_min_weight(puncture(c, r.index, r.pair)).d, r.guaranteed_d);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Avoidance, RequiresCompleteWords) {
    const auto c = fixtures::qutrit5();
    EXPECT_THROW(find_avoidance(c, min_distance(c)), IncompleteWords);
}

TEST(TupleCriterion, SingleIndexAgreesWithAvoidance) {
    std::mt19937_64 rng(52);
    std::vector<StabilizerCode> codes{fixtures::qutrit5()};
    for (int i = 0; i < 10; ++i) codes.push_back(oracle::random_pure_code(rng, 3, 5, 1));
    for (const auto& c : codes) {
        const auto words = all_words(c);
        const auto avoid = find_avoidance(c, words);
        for (std::size_t i = 0; i < c.n(); ++i) {
            std::set<ProjPair> expected;
            for (const auto& r : avoid)
                if (r.index == i) expected.insert(r.pair);
            const auto tc = tuple_criterion(c, words, {i});
            EXPECT_EQ(tc.witness.has_value(), !expected.empty());
            if (tc.witness) {
                EXPECT_EQ(tc.witness->size(), 1u);
                EXPECT_TRUE(expected.contains(tc.witness->front()));
                EXPECT_EQ(*expected.begin(), tc.witness->front());
            }
        }
    }
}

TEST(TupleCriterion, WitnessRaisesDistanceAboveDMinusT) {
    std::mt19937_64 rng(53);
    std::size_t witnessed = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = oracle::random_pure_code(rng, 3, 6, 1, 3);
        const auto words = all_words(c);
        for (const auto& idx : orbit_reps(6, 2, PermGroup::identity())) {
            const auto tc = tuple_criterion(c, words, idx);
            EXPECT_EQ(tc.witness.has_value(), tc.m_star_size < tc.threshold);
            EXPECT_EQ(tc.threshold, 64u);
            if (!tc.witness) continue;
            ++witnessed;
            const auto out = puncture_at(c, idx, *tc.witness);
            EXPECT_GT(min_distance(out).d + 2, words.d);
        }
    }
    EXPECT_GT(witnessed, 0u);
}

TEST(TupleCriterion, FifteenQutritTripleWithWitness) {
    const auto c = fixtures::qutrit15();
    const auto words = all_words(c);
    bool tested = false;
    for (const auto& idx : orbit_reps(15, 3, PermGroup::identity())) {
        const auto tc = tuple_criterion(c, words, idx);
        if (!tc.witness) continue;
        const std::size_t d = min_distance(puncture_at(c, idx, *tc.witness)).d;
        EXPECT_GE(d, 3u);
        EXPECT_LE(d, 4u);
        tested = true;
        break;
    }
    EXPECT_TRUE(tested);
}

TEST(TupleCriterion, SetMissingEveryWordHasEmptyProjection) {
    const auto c = with_fixed_qudit(fixtures::qutrit5());
    const auto tc = tuple_criterion(c, all_words(c), {0, 5});
    EXPECT_EQ(tc.m_star_size, 0u);
    ASSERT_TRUE(tc.witness);
    for (const auto& x : *tc.witness) EXPECT_FALSE(x.pair().a == 0 && x.pair().b == 0);
}

TEST(TupleCriterion, RejectsBadIndexSets) {
    const auto c = fixtures::qutrit5();
    const auto words = all_words(c);
    EXPECT_THROW(tuple_criterion(c, words, {}), InvalidIndex);
    EXPECT_THROW(tuple_criterion(c, words, {1, 1}), InvalidIndex);
    EXPECT_THROW(tuple_criterion(c, words, {5}), InvalidIndex);
}

TEST(HittingSet, SingletonWhenOneIndexVanishesEverywhere) {
    const auto c = with_fixed_qudit(fixtures::qutrit5());
    const auto words = all_words(c);
    EXPECT_EQ(find_hitting_set(words, 6, HittingMode::greedy, 6).indices, std::vector<std::size_t>{5});
    EXPECT_EQ(find_hitting_set(words, 6, HittingMode::exact, 6).indices, std::vector<std::size_t>{5});
}

TEST(HittingSet, ExactBeatsGreedyOnCraftedInstance) {
    // Zero sets {0,2} {0,2} {0} {1,2} {1,2} {1}: greedy takes 2 first and then needs 0 and 1.
    const PrimeField f(3);
    MinWeightReport words;
    words.d = 2;
    words.words = {
        SympVec(f, {0, 1, 0, 1}, {0, 0, 0, 0}), SympVec(f, {0, 1, 0, 2}, {0, 0, 0, 0}),
        SympVec(f, {0, 1, 1, 1}, {0, 0, 0, 0}), SympVec(f, {1, 0, 0, 1}, {0, 0, 0, 0}),
        SympVec(f, {1, 0, 0, 2}, {0, 0, 0, 0}), SympVec(f, {1, 0, 1, 1}, {0, 0, 0, 0}),
    };
    const auto greedy = find_hitting_set(words, 4, HittingMode::greedy, 4);
    const auto exact = find_hitting_set(words, 4, HittingMode::exact, 4);
    EXPECT_EQ(greedy.indices, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(exact.indices, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(is_hitting_set(words, greedy.indices));
    EXPECT_TRUE(is_hitting_set(words, exact.indices));
    EXPECT_THROW(find_hitting_set(words, 4, HittingMode::exact, 1), NotFound);
    EXPECT_THROW(find_hitting_set(words, 4, HittingMode::greedy, 2), NotFound);
}

TEST(HittingSet, FullSupportWordHasNoCover) {
    const PrimeField f(2);
    MinWeightReport words;
    words.d = 2;
    words.words = {SympVec(f, {1, 1}, {0, 0})};
    EXPECT_THROW(find_hitting_set(words, 2, HittingMode::greedy, 2), NotFound);
    EXPECT_THROW(find_hitting_set(words, 2, HittingMode::exact, 2), NotFound);
}

TEST(HittingSet, WeightDStabilizersMustBeCovered) {
    const auto c = parse_code("3 5 1\n"
                              "2 0 0 2 0  2 2 1 1 0\n"
                              "0 2 1 0 1  1 1 0 0 0\n"
                              "2 0 2 1 2  2 2 0 0 1\n"
                              "2 0 1 2 1  0 1 2 2 1\n");
    const auto logical = all_words(c);
    ASSERT_EQ(logical.d, 2u);
    const auto h = find_hitting_set(logical, c.n(), HittingMode::exact, 4);
    EXPECT_EQ(h.indices, std::vector<std::size_t>{0});
    EXPECT_LT(oracle::naive_min_weight(shorten(c, h.indices)).d + h.indices.size(), logical.d + 1);

    const auto full = shortening_words(c, {}, 1u << 20);
    EXPECT_EQ(full.d, 2u);
    EXPECT_GT(full.words.size(), logical.words.size());
    EXPECT_FALSE(is_hitting_set(full, h.indices));
    const auto g = find_hitting_set(full, c.n(), HittingMode::exact, 4);
    EXPECT_GE(oracle::naive_min_weight(shorten(c, g.indices)).d + g.indices.size(), full.d + 1);
}

TEST(HittingSet, ShorteningPureCodeAtCover) {
    std::mt19937_64 rng(54);
    std::size_t checked = 0;
    for (int trial = 0; trial < 60 && checked < 25; ++trial) {
        const auto c = trial % 2 ? oracle::random_pure_code(rng, 3, 6, 1, 3) : oracle::random_pure_code(rng, 2, 6, 2, 2);
        const auto words = shortening_words(c, {}, 1u << 20);
        HittingSet h;
        try {
            h = find_hitting_set(words, c.n(), HittingMode::exact, 3);
        } catch (const NotFound&) {
            continue;
        }
        ASSERT_TRUE(is_hitting_set(words, h.indices));
        const auto s = shorten(c, h.indices);
        EXPECT_GE(oracle::naive_min_weight(s).d + h.indices.size(), words.d + 1);
        ++checked;
    }
    EXPECT_GT(checked, 0u);
}

TEST(OrbitReps, CyclicCountsOnTwentyOne) {
    const auto g = PermGroup::cyclic();
    EXPECT_EQ(orbit_reps(21, 1, g).size(), 1u);
    EXPECT_EQ(orbit_reps(21, 2, g).size(), 10u);
    EXPECT_EQ(orbit_reps(21, 3, g).size(), 64u);
}

TEST(OrbitReps, IdentityListsEverySubset) {
    EXPECT_EQ(orbit_reps(7, 3, PermGroup::identity()).size(), 35u);
    EXPECT_EQ(orbit_reps(5, 0, PermGroup::identity()).size(), 1u);
    EXPECT_THROW(orbit_reps(3, 4, PermGroup::identity()), InvalidIndex);
}

TEST(OrbitReps, OrbitsPartitionAllSubsets) {
    const std::vector<std::pair<std::size_t, PermGroup>> cases{
        {9, PermGroup::cyclic()},
        {8, PermGroup::from_generators({{1, 0, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7, 0}})},
        {6, PermGroup::from_generators({{5, 4, 3, 2, 1, 0}})},
    };
    for (const auto& [n, g] : cases) {
        for (std::size_t t = 1; t <= 4; ++t) {
            std::set<std::vector<std::size_t>> seen;
            std::size_t total = 0;
            for (const auto& rep : orbit_reps(n, t, g)) {
                const auto orb = orbit(n, rep, g);
                EXPECT_EQ(*std::min_element(orb.begin(), orb.end()), rep);
                for (const auto& s : orb) EXPECT_TRUE(seen.insert(s).second);
                total += orb.size();
            }
            EXPECT_EQ(total, choose(n, t));
        }
    }
}

TEST(OrbitReps, RejectsInvalidPermutations) {
    EXPECT_THROW(orbit_reps(4, 2, PermGroup::from_generators({{0, 1, 2}})), InvalidPermutation);
    EXPECT_THROW(orbit_reps(4, 2, PermGroup::from_generators({{0, 1, 1, 3}})), InvalidPermutation);
    EXPECT_THROW(orbit_reps(4, 2, PermGroup::from_generators({{0, 1, 2, 4}})), InvalidPermutation);
}
