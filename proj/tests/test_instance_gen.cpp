#include <gtest/gtest.h>

#include "qttc/instance_gen.hpp"

using namespace qttc;

TEST(SeededRng, FrozenSequence) {
    // mt19937_64 is fully specified; these values pin the draw algorithm
    SeededRng rng(42);
    std::vector<std::uint64_t> draws;
    for (int k = 0; k < 5; ++k) draws.push_back(rng.below(10));
    SeededRng again(42);
    for (auto d : draws) EXPECT_EQ(again.below(10), d);
    EXPECT_EQ(SeededRng(42).permutation(6), SeededRng(42).permutation(6));
}

TEST(SeededRng, PermutationIsUnbiasedOnSmallSets) {
    // all 6 orders of 3 elements appear with frequency close to 1/6
    SeededRng rng(1);
    std::map<std::vector<Id>, int> counts;
    const int trials = 60000;
    for (int t = 0; t < trials; ++t) counts[rng.permutation(3)] += 1;
    ASSERT_EQ(counts.size(), 6u);
    for (const auto& [perm, count] : counts) {
        EXPECT_NEAR(count, trials / 6, 400);
    }
}

TEST(RandomNetwork, DeterministicAndValid) {
    const GenConfig cfg{InstanceKind::network, 5, 3, 1, 42};
    const auto a = random_network_instance(cfg);
    EXPECT_EQ(a, random_network_instance(cfg));
    EXPECT_TRUE(validate_network_instance(a).ok());
    for (auto q : a.quotas) {
        EXPECT_GE(q, 1u);
        EXPECT_LE(q, 3u);
    }
    EXPECT_NE(a, random_network_instance({InstanceKind::network, 5, 3, 1, 43}));
}

TEST(RandomNetwork, SingleAgentIsForced) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = random_network_instance({InstanceKind::network, 1, 1, 1, seed});
        EXPECT_EQ(inst, (NetworkInstance{{1}, {Preference({0})}}));
    }
}

TEST(RandomNetwork, QuotaCappedAtAgentCount) {
    const auto inst = random_network_instance({InstanceKind::network, 3, 50, 1, 5});
    for (auto q : inst.quotas) EXPECT_LE(q, 3u);
}

TEST(RandomNetwork, RejectsBadConfig) {
    EXPECT_THROW(random_network_instance({InstanceKind::network, 0, 1, 1, 0}), std::invalid_argument);
    EXPECT_THROW(random_network_instance({InstanceKind::network, 3, 0, 1, 0}), std::invalid_argument);
    EXPECT_THROW(random_network_instance({InstanceKind::cap, 3, 1, 1, 0}), std::invalid_argument);
}

TEST(RandomCap, DeterministicAndValid) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GenConfig cfg{InstanceKind::cap, 1 + seed % 6, 1, 4, seed};
        const auto inst = random_cap_instance(cfg);
        EXPECT_EQ(inst, random_cap_instance(cfg));
        EXPECT_TRUE(validate_cap_instance(inst).ok()) << validate_cap_instance(inst).summary();
        for (Id i = 0; i < inst.agent_count(); ++i) EXPECT_LE(inst.quota(i), 4u);
    }
    EXPECT_THROW(random_cap_instance({InstanceKind::cap, 2, 1, 0, 0}), std::invalid_argument);
}

TEST(RandomCap, UnitEndowmentsGiveAHousingMarket) {
    const auto inst = random_cap_instance({InstanceKind::cap, 2, 1, 1, 9});
    EXPECT_EQ(inst.item_count, 2u);
    EXPECT_EQ(inst.quota(0), 1u);
    EXPECT_EQ(inst.quota(1), 1u);
}

TEST(CanonicalExample, PublishedQuotas) {
    EXPECT_EQ(canonical_example(1).instance.quotas, (std::vector<std::uint32_t>{1, 3, 3}));
    EXPECT_TRUE(canonical_example(1).arbitrary_preferences);
    EXPECT_EQ(canonical_example(2).instance.quotas, (std::vector<std::uint32_t>{1, 4, 4, 4}));
    EXPECT_TRUE(canonical_example(2).arbitrary_preferences);
    const auto ex3 = canonical_example(3);
    EXPECT_EQ(ex3.instance.quotas, (std::vector<std::uint32_t>{1, 2}));
    EXPECT_EQ(ex3.instance.preferences[0][0], 0u);
    EXPECT_FALSE(ex3.arbitrary_preferences);
    for (int id : {1, 2, 3}) EXPECT_TRUE(validate_network_instance(canonical_example(id).instance).ok());
    EXPECT_THROW(canonical_example(4), std::invalid_argument);
}
