#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "qttc/instance_gen.hpp"
#include "qttc/prices.hpp"
#include "qttc/ttc_cap.hpp"
#include "qttc/ttc_network.hpp"

using namespace qttc;

namespace {

std::vector<Price> prices(std::initializer_list<int> values) {
    std::vector<Price> out;
    for (int v : values) out.emplace_back(v);
    return out;
}

NetworkInstance example3() {
    return {{1, 2}, {Preference({0, 1}), Preference({0, 1})}};
}

}  // namespace

TEST(StagePrices, SmallCases) {
    EXPECT_EQ(stage_prices(1), prices({1}));
    EXPECT_EQ(stage_prices(3), prices({4, 2, 1}));
    EXPECT_TRUE(stage_prices(0).empty());
}

TEST(StagePrices, MatchClosedFormAndDominateLaterStages) {
    for (std::uint32_t k = 0; k <= 63; ++k) {
        const auto p = stage_prices(k);
        const auto expected = oracle::closed_form_stage_prices(k);
        ASSERT_EQ(p.size(), expected.size());
        Price later = 0;
        for (std::size_t s = p.size(); s > 0; --s) {
            EXPECT_EQ(p[s - 1], Price(expected[s - 1]));
            EXPECT_GT(p[s - 1], later);
            later += p[s - 1];
        }
    }
}

TEST(StagePrices, BeyondNativeWidth) {
    const auto p = stage_prices(200);
    EXPECT_EQ(p.front(), Price(1) << 199);
    EXPECT_EQ(p.back(), 1);
}

TEST(PersonalizedPrices, ExampleThree) {
    const auto out = solve_network(example3());
    const auto table = personalized_prices(out.trace, 2);
    EXPECT_EQ(table.stage_prices, prices({2, 1}));
    EXPECT_EQ(table.personalized.at({0, 0}), 2);
    EXPECT_EQ(table.personalized.at({1, 1}), 1);
    EXPECT_EQ(table.market, (std::vector<std::optional<Price>>{Price(2), Price(1)}));
}

TEST(PersonalizedPrices, SingleStageSelfLoops) {
    StageTrace trace{{{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}, 1};
    const auto table = personalized_prices(trace, 3);
    for (Id i = 0; i < 3; ++i) {
        EXPECT_EQ(table.personalized.at({i, i}), 1);
        EXPECT_EQ(table.market[i], Price(1));
    }
}

TEST(PersonalizedPrices, TwoStageSwap) {
    NetworkInstance inst{{2, 2}, {Preference({1, 0}), Preference({0, 1})}};
    const auto out = solve_network(inst);
    const auto table = personalized_prices(out.trace, 2);
    EXPECT_EQ(table.personalized.at({0, 1}), 2);
    EXPECT_EQ(table.personalized.at({1, 0}), 2);
    EXPECT_EQ(table.personalized.at({0, 0}), 1);
    EXPECT_EQ(table.personalized.at({1, 1}), 1);
    EXPECT_EQ(table.market, (std::vector<std::optional<Price>>{Price(1), Price(1)}));
    EXPECT_TRUE(verify_price_properties(inst, out.network, table).all_pass());
}

TEST(PersonalizedPrices, UnreceivedItemIsUnpriced) {
    StageTrace trace{{{0, 0, 1}}, 1};
    const auto table = personalized_prices(trace, 2);
    EXPECT_FALSE(table.market[1]);
}

TEST(PersonalizedPrices, RejectsMalformedTrace) {
    EXPECT_THROW(personalized_prices({{{0, 0, 1}, {0, 0, 2}}, 2}, 1), std::invalid_argument);
    EXPECT_THROW(personalized_prices({{{0, 0, 3}}, 2}, 1), std::invalid_argument);
    EXPECT_THROW(personalized_prices({{{0, 4, 1}}, 1}, 1), std::invalid_argument);
}

TEST(VerifyPrices, ExampleThreePasses) {
    const auto inst = example3();
    const auto out = solve_network(inst);
    const auto report = verify_price_properties(inst, out.network, personalized_prices(out.trace, 2));
    EXPECT_TRUE(report.undercut.pass);
    EXPECT_TRUE(report.preferred_costs_more.pass);
    EXPECT_TRUE(report.budget_balance.pass);
}

TEST(VerifyPrices, SelfLoopMutationIsInvisibleToBudgetBalance) {
    // p_0(0) is both what agent 0 pays and what she is paid
    const auto inst = example3();
    const auto out = solve_network(inst);
    auto table = personalized_prices(out.trace, 2);
    table.personalized.at({0, 0}) = 5;
    table.refresh_market(2);
    const auto report = verify_price_properties(inst, out.network, table);
    EXPECT_TRUE(report.budget_balance.pass);
    EXPECT_TRUE(report.all_pass());

    // lowering it to agent 1's price breaks (i): p(0) no longer beats p_1(1)
    table.personalized.at({0, 0}) = 1;
    table.refresh_market(2);
    const auto lowered = verify_price_properties(inst, out.network, table);
    EXPECT_FALSE(lowered.undercut.pass);
    EXPECT_FALSE(lowered.preferred_costs_more.pass);
    EXPECT_TRUE(lowered.budget_balance.pass);
}

TEST(VerifyPrices, CrossLinkMutationBreaksBudgetBalance) {
    NetworkInstance inst{{2, 2}, {Preference({1, 0}), Preference({0, 1})}};
    const auto out = solve_network(inst);
    auto table = personalized_prices(out.trace, 2);
    table.personalized.at({0, 1}) = 5;
    table.refresh_market(2);
    const auto report = verify_price_properties(inst, out.network, table);
    EXPECT_FALSE(report.budget_balance.pass);
    ASSERT_FALSE(report.budget_balance.counterexamples.empty());
    EXPECT_EQ(report.budget_balance.counterexamples.front(), "agent 0 pays 6 but receives 3");
}

TEST(VerifyPrices, MismatchedTableRejected) {
    const auto inst = example3();
    const auto out = solve_network(inst);
    auto table = personalized_prices(out.trace, 2);
    table.personalized[{1, 0}] = 1;
    EXPECT_THROW(verify_price_properties(inst, out.network, table), std::invalid_argument);
    table = personalized_prices(out.trace, 2);
    table.personalized.erase({1, 1});
    EXPECT_THROW(verify_price_properties(inst, out.network, table), std::invalid_argument);
}

TEST(VerifyPrices, SolverOutputsSatisfyAllProperties) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::size_t n = 1 + seed % 12;
        const auto inst = random_network_instance({InstanceKind::network, n, static_cast<std::uint32_t>(n), 1, seed});
        const auto out = solve_network(inst);
        const auto table = personalized_prices(out.trace, n);
        const auto report = verify_price_properties(inst, out.network, table);
        EXPECT_TRUE(report.all_pass()) << "seed " << seed;

        // per stage, each participant pays and is paid the stage price once
        std::map<std::uint32_t, std::map<Id, int>> balance;
        for (const auto& t : out.trace.transfers) {
            balance[t.stage][t.receiver] += 1;
            balance[t.stage][t.item] -= 1;
        }
        for (const auto& [stage, per_agent] : balance) {
            for (const auto& [agent, net] : per_agent) EXPECT_EQ(net, 0) << "stage " << stage;
        }
    }
}

TEST(VerifyPrices, CapExtension) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = random_cap_instance({InstanceKind::cap, 1 + seed % 6, 1, 3, seed});
        const auto out = solve_cap(inst);
        const auto table = personalized_prices(out.trace, inst.item_count);
        EXPECT_TRUE(verify_cap_price_properties(inst, out.allocation, table).all_pass()) << "seed " << seed;
    }
}
