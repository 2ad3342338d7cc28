#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "randset/setcover.hpp"

using namespace randset;
using namespace randset::testing;

namespace {

std::vector<SeedId> sorted(std::vector<SeedId> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(RandomizedCover, SixSeedFixture)
{
    const auto inst = six_seed_instance();
    std::set<std::size_t> sizes;
    for (std::uint64_t s = 0; s < 64; ++s) {
        auto rng = Rng::stream(s, "shuffle");
        auto r = randomized_cover(inst, rng);
        EXPECT_EQ(cover_union(inst, r.chosen), inst.universe);
        EXPECT_LE(r.chosen.size(), 6u);
        EXPECT_GE(r.chosen.size(), 3u);
        EXPECT_EQ(std::set<SeedId>(r.chosen.begin(), r.chosen.end()).size(), r.chosen.size());
        sizes.insert(r.chosen.size());
    }
    EXPECT_TRUE(sizes.count(3));
}

TEST(RandomizedCover, IdenticalSeedsKeepOneUniformly)
{
    CoverInstance inst{bits(1, {0}), {}};
    for (SeedId i = 0; i < 5; ++i) {
        inst.sets.emplace_back(i, bits(1, {0}));
    }
    std::map<SeedId, int> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        auto rng = Rng::stream(s, "shuffle");
        auto r = randomized_cover(inst, rng);
        ASSERT_EQ(r.chosen.size(), 1u);
        ++seen[r.chosen[0]];
    }
    ASSERT_EQ(seen.size(), 5u);
    for (auto [id, n] : seen) {
        // 200 expected; 5 sigma is about 63.
        EXPECT_NEAR(n, 200, 63) << "seed " << id;
    }
}

TEST(RandomizedCover, EmptyUniverse)
{
    CoverInstance inst{FeatureBitmap(4), {{0, bits(4, {1})}, {1, bits(4, {2})}}};
    auto rng = Rng::stream(0, "shuffle");
    EXPECT_TRUE(randomized_cover(inst, rng).chosen.empty());
    CoverInstance none{FeatureBitmap(0), {}};
    EXPECT_TRUE(randomized_cover(none, rng).chosen.empty());
}

TEST(RandomizedCover, TwoDisjointCoversBothAppear)
{
    const auto inst = twin_cover_instance();
    std::set<std::vector<SeedId>> covers;
    for (std::uint64_t s = 0; s < 64; ++s) {
        auto rng = Rng::stream(s, "shuffle");
        covers.insert(sorted(randomized_cover(inst, rng).chosen));
    }
    EXPECT_GE(covers.size(), 2u);
    EXPECT_TRUE(covers.count({0, 1, 2}));
    EXPECT_TRUE(covers.count({3, 4, 5}));
}

TEST(RandomizedCover, FixedRngIsDeterministic)
{
    auto rng0 = Rng::stream(0, "fixture");
    const auto inst = random_instance(rng0, 40, 30, 0.1);
    auto a = Rng::stream(77, "shuffle");
    auto b = Rng::stream(77, "shuffle");
    EXPECT_EQ(randomized_cover(inst, a).chosen, randomized_cover(inst, b).chosen);
}

TEST(RandomizedCover, InfeasibleCarriesResidual)
{
    CoverInstance inst{bits(3, {0, 1, 2}), {{0, bits(3, {0})}, {1, bits(3, {1})}}};
    auto rng = Rng::stream(0, "shuffle");
    try {
        randomized_cover(inst, rng);
        FAIL() << "expected InfeasibleCover";
    } catch (const InfeasibleCover& e) {
        EXPECT_EQ(e.residual(), bits(3, {2}));
    }
    EXPECT_THROW(greedy_cover(inst), InfeasibleCover);
    EXPECT_THROW(exact_min_cover(inst), InfeasibleCover);
    CoverInstance empty_sets{bits(2, {0}), {}};
    EXPECT_THROW(randomized_cover(empty_sets, rng), InfeasibleCover);
    EXPECT_THROW(greedy_cover(empty_sets), InfeasibleCover);
}

TEST(RandomizedCover, WidthMismatch)
{
    CoverInstance inst{bits(3, {0}), {{0, bits(4, {0})}}};
    auto rng = Rng::stream(0, "shuffle");
    EXPECT_THROW(randomized_cover(inst, rng), std::invalid_argument);
    EXPECT_THROW(greedy_cover(inst), std::invalid_argument);
}

// Which set is visited first should be uniform over all six positions.
TEST(RandomizedCover, ShuffleFirstPickIsUniform)
{
    const auto inst = twin_cover_instance();
    std::vector<int> first(6, 0);
    for (std::uint64_t s = 0; s < 6000; ++s) {
        auto rng = Rng::stream(s, "shuffle");
        ++first[randomized_cover(inst, rng).chosen.front()];
    }
    double chi2 = 0;
    for (int n : first) {
        chi2 += (n - 1000.0) * (n - 1000.0) / 1000.0;
    }
    // 5 degrees of freedom; 20.5 is the 0.999 quantile.
    EXPECT_LT(chi2, 20.5);
}

TEST(GreedyCover, DominatingSet)
{
    CoverInstance inst{bits(3, {0, 1, 2}), {{0, bits(3, {0, 1, 2})}, {1, bits(3, {0})}, {2, bits(3, {1})}}};
    EXPECT_EQ(greedy_cover(inst).chosen, std::vector<SeedId>{0});
    EXPECT_EQ(greedy_cover(inst).chosen, greedy_cover(inst).chosen);
}

TEST(GreedyCover, TiesGoToLowestSeedIdNotListPosition)
{
    CoverInstance inst{bits(2, {0, 1}), {{9, bits(2, {0, 1})}, {4, bits(2, {0, 1})}, {7, bits(2, {0, 1})}}};
    EXPECT_EQ(greedy_cover(inst).chosen, std::vector<SeedId>{4});
    EXPECT_EQ(greedy_cover(twin_cover_instance()).chosen, (std::vector<SeedId>{0, 1, 2}));
}

// U = {0..5}: greedy grabs the 4-element set first and then needs two more,
// while {0,1,2} + {3,4,5} suffices.
TEST(GreedyCover, SuboptimalButWithinHarmonicBound)
{
    CoverInstance inst{bits(6, {0, 1, 2, 3, 4, 5}),
                       {{0, bits(6, {0, 1, 2})}, {1, bits(6, {3, 4, 5})}, {2, bits(6, {0, 1, 3, 4})}}};
    const auto g = greedy_cover(inst).chosen;
    const auto e = exact_min_cover(inst).chosen;
    EXPECT_EQ(g, (std::vector<SeedId>{2, 0, 1}));
    EXPECT_EQ(e, (std::vector<SeedId>{0, 1}));
    EXPECT_LE(static_cast<double>(g.size()), harmonic(6) * static_cast<double>(e.size()));
}

TEST(GreedyCover, OracleSearchFindsGapsAndBoundHolds)
{
    auto rng = Rng::stream(8, "greedy-gap");
    int gaps = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto inst = random_instance(rng, 3 + rng.below(8), 4 + rng.below(10), 0.35);
        const auto g = greedy_cover(inst).chosen.size();
        const auto e = brute_force_min_cover(inst).size();
        ASSERT_LE(e, g);
        ASSERT_LE(static_cast<double>(g), harmonic(inst.universe.count()) * static_cast<double>(e) + 1e-9);
        gaps += g > e;
    }
    EXPECT_GT(gaps, 0);
}

TEST(ExactCover, SmallCases)
{
    CoverInstance empty{FeatureBitmap(3), {{0, bits(3, {1})}}};
    EXPECT_TRUE(exact_min_cover(empty).chosen.empty());
    CoverInstance one{bits(3, {0, 1, 2}), {{3, bits(3, {0})}, {5, bits(3, {0, 1, 2})}, {6, bits(3, {2})}}};
    EXPECT_EQ(exact_min_cover(one).chosen, std::vector<SeedId>{5});
    EXPECT_EQ(exact_min_cover(six_seed_instance()).chosen, (std::vector<SeedId>{0, 1, 4}));
}

TEST(ExactCover, MatchesBruteForceEnumeration)
{
    auto rng = Rng::stream(4, "exact-test");
    for (int trial = 0; trial < 300; ++trial) {
        auto inst = random_instance(rng, rng.below(13), 1 + rng.below(16), 0.25);
        // Scramble ids so the canonical tie-break is exercised.
        for (std::size_t i = 0; i < inst.sets.size(); ++i) {
            inst.sets[i].first = static_cast<SeedId>((i * 7919) % 1009);
        }
        ASSERT_EQ(exact_min_cover(inst).chosen, brute_force_min_cover(inst));
    }
}

TEST(ExactCover, TooLarge)
{
    CoverInstance inst{bits(1, {0}), {}};
    for (SeedId i = 0; i < 21; ++i) {
        inst.sets.emplace_back(i, bits(1, {0}));
    }
    EXPECT_THROW(exact_min_cover(inst), InstanceTooLarge);
}

TEST(CoverAlgorithms, CompletenessAndSizeBounds)
{
    auto rng = Rng::stream(12, "bounds");
    for (int trial = 0; trial < 300; ++trial) {
        auto inst = random_instance(rng, 1 + rng.below(12), 1 + rng.below(20), 0.2);
        auto shuffle = rng.split("shuffle");
        const auto r = randomized_cover(inst, shuffle).chosen;
        const auto g = greedy_cover(inst).chosen;
        const auto e = exact_min_cover(inst).chosen;
        ASSERT_EQ(cover_union(inst, r), inst.universe);
        ASSERT_EQ(cover_union(inst, g), inst.universe);
        ASSERT_EQ(cover_union(inst, e), inst.universe);
        ASSERT_LE(e.size(), g.size());
        ASSERT_LE(e.size(), r.size());
        ASSERT_LE(g.size(), inst.sets.size());
        ASSERT_LE(r.size(), inst.sets.size());
    }
}

TEST(CoverAlgorithms, RandomizedVariesWhereMinimalCoversDiffer)
{
    auto rng = Rng::stream(13, "variety");
    int instances = 0;
    while (instances < 30) {
        auto inst = random_instance(rng, 8, 6, 0.35);
        // Count distinct minimum covers with the brute-force oracle.
        const auto best = brute_force_min_cover(inst).size();
        std::set<std::vector<SeedId>> minimal;
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != best) {
                continue;
            }
            FeatureBitmap acc(6);
            std::vector<SeedId> ids;
            for (SeedId i = 0; i < 8; ++i) {
                if (mask >> i & 1u) {
                    acc |= inst.sets[i].second;
                    ids.push_back(i);
                }
            }
            if (inst.universe.is_subset_of(acc)) {
                minimal.insert(ids);
            }
        }
        if (minimal.size() < 2) {
            continue;
        }
        ++instances;
        std::set<std::vector<SeedId>> outputs;
        for (std::uint64_t s = 0; s < 64; ++s) {
            auto shuffle = Rng::stream(s, "shuffle");
            outputs.insert(sorted(randomized_cover(inst, shuffle).chosen));
        }
        EXPECT_GE(outputs.size(), 2u);
    }
}

TEST(Harmonic, Values)
{
    EXPECT_DOUBLE_EQ(harmonic(0), 0.0);
    EXPECT_DOUBLE_EQ(harmonic(1), 1.0);
    EXPECT_NEAR(harmonic(4), 25.0 / 12.0, 1e-12);
}
