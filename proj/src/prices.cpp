#include "qttc/prices.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qttc {

std::vector<Price> stage_prices(std::uint32_t stages) {
    std::vector<Price> prices(stages);
    Price later_sum = 0;
    for (std::uint32_t k = stages; k > 0; --k) {
        prices[k - 1] = later_sum + 1;
        later_sum += prices[k - 1];
    }
    return prices;
}

void PriceTable::refresh_market(std::size_t item_count) {
    market.assign(item_count, std::nullopt);
    for (const auto& [key, price] : personalized) {
        auto& slot = market.at(key.second);
        if (!slot || price < *slot) slot = price;
    }
}

PriceTable personalized_prices(const StageTrace& trace, std::size_t item_count) {
    PriceTable table;
    table.stage_prices = stage_prices(trace.stages);
    for (const auto& t : trace.transfers) {
        if (t.stage == 0 || t.stage > trace.stages) {
            throw std::invalid_argument("transfer at stage " + std::to_string(t.stage) +
                                        " outside 1.." + std::to_string(trace.stages));
        }
        if (t.item >= item_count) {
            throw std::invalid_argument("transfer of unknown item " + std::to_string(t.item));
        }
        auto [it, inserted] = table.personalized.emplace(std::pair{t.receiver, t.item},
                                                         table.stage_prices[t.stage - 1]);
        if (!inserted) {
            throw std::invalid_argument("duplicate transfer of item " + std::to_string(t.item) +
                                        " to agent " + std::to_string(t.receiver));
        }
    }
    table.refresh_market(item_count);
    return table;
}

namespace {

void fail(PropertyCheck& check, const std::string& message) {
    check.pass = false;
    if (check.counterexamples.size() < kMaxCounterexamples) check.counterexamples.push_back(message);
}

/// Shared checker: `owner[g]` receives the payment for item g.
PriceReport verify(std::size_t agents, std::size_t items, const std::vector<Preference>& prefs,
                   const std::vector<std::vector<Id>>& bundles, const std::vector<Id>& owner,
                   const PriceTable& table) {
    std::size_t links = 0;
    for (std::size_t i = 0; i < agents; ++i) {
        for (Id j : bundles[i]) {
            if (!table.personalized.count({static_cast<Id>(i), j})) {
                throw std::invalid_argument("no price for item " + std::to_string(j) + " held by agent " +
                                            std::to_string(i));
            }
            ++links;
        }
    }
    if (links != table.personalized.size()) {
        throw std::invalid_argument("price table has entries for items nobody holds");
    }
    if (table.market.size() != items) throw std::invalid_argument("market table has the wrong size");

    auto paid = [&](Id i, Id j) -> const Price& { return table.personalized.at({i, j}); };
    // a < b with nullopt as +infinity
    auto market_exceeds = [&](Id item, const Price& bound) {
        const auto& p = table.market[item];
        return !p || *p > bound;
    };

    PriceReport report;
    std::vector<bool> held(items);
    for (std::size_t a = 0; a < agents; ++a) {
        const auto i = static_cast<Id>(a);
        const auto& bundle = bundles[a];
        const auto ranks = rank_table(prefs[a]);
        std::fill(held.begin(), held.end(), false);
        for (Id j : bundle) held[j] = true;

        for (std::size_t g = 0; g < items; ++g) {
            if (held[g]) continue;
            const auto j = static_cast<Id>(g);
            Price below = 0;
            bool any = false;
            for (Id h : bundle) {
                if (ranks[j] < ranks[h]) {
                    below += paid(i, h);
                    any = true;
                    if (!market_exceeds(j, paid(i, h))) {
                        std::ostringstream msg;
                        msg << "agent " << i << " prefers unheld " << j << " to held " << h << " but p(" << j
                            << ")=" << *table.market[j] << " <= p_" << i << "(" << h << ")=" << paid(i, h);
                        fail(report.preferred_costs_more, msg.str());
                    }
                }
            }
            if (any && !market_exceeds(j, below)) {
                std::ostringstream msg;
                msg << "agent " << i << ", item " << j << ": p(" << j << ")=" << *table.market[j]
                    << " <= " << below << " paid for items ranked below it";
                fail(report.undercut, msg.str());
            }
        }
    }

    std::vector<Price> pays(agents, 0);
    std::vector<Price> earns(agents, 0);
    for (const auto& [key, price] : table.personalized) {
        pays.at(key.first) += price;
        earns.at(owner.at(key.second)) += price;
    }
    for (std::size_t a = 0; a < agents; ++a) {
        if (pays[a] != earns[a]) {
            std::ostringstream msg;
            msg << "agent " << a << " pays " << pays[a] << " but receives " << earns[a];
            fail(report.budget_balance, msg.str());
        }
    }
    return report;
}

}  // namespace

PriceReport verify_price_properties(const NetworkInstance& inst, const DirectedNetwork& net,
                                    const PriceTable& table) {
    const std::size_t n = inst.agent_count();
    if (net.agent_count() != n) throw std::invalid_argument("network does not match instance");
    std::vector<Id> owner(n);
    std::iota(owner.begin(), owner.end(), Id{0});
    return verify(n, n, inst.preferences, net.assignments, owner, table);
}

PriceReport verify_cap_price_properties(const CapInstance& inst, const Allocation& alloc,
                                        const PriceTable& table) {
    if (alloc.agent_count() != inst.agent_count()) throw std::invalid_argument("allocation does not match instance");
    return verify(inst.agent_count(), inst.item_count, inst.preferences, alloc.bundles, inst.owners(), table);
}

}  // namespace qttc
