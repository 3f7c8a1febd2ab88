#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qttc/model.hpp"
#include "qttc/trace.hpp"

namespace qttc {

using Price = boost::multiprecision::cpp_int;

/// p_1..p_K with p_K = 1 and p_{k-1} = p_k + ... + p_K + 1, i.e. p_k = 2^(K-k).
std::vector<Price> stage_prices(std::uint32_t stages);

struct PriceTable {
    std::vector<Price> stage_prices;
    /// (receiver, item) -> price paid by the receiver for that item.
    std::map<std::pair<Id, Id>, Price> personalized;
    /// Lowest personalized price paid for each item; nullopt if nobody
    /// received it ("unpriced", compared as +infinity).
    std::vector<std::optional<Price>> market;

    /// Recomputes `market` from `personalized` over `item_count` items.
    void refresh_market(std::size_t item_count);

    friend bool operator==(const PriceTable&, const PriceTable&) = default;
};

/// Prices every transfer at its stage price. `item_count` sizes the market
/// table. Throws std::invalid_argument on a repeated (receiver, item) pair or
/// a transfer outside 1..stages.
PriceTable personalized_prices(const StageTrace& trace, std::size_t item_count);

struct PropertyCheck {
    bool pass = true;
    std::vector<std::string> counterexamples;  // capped at kMaxCounterexamples

    friend bool operator==(const PropertyCheck&, const PropertyCheck&) = default;
};

struct PriceReport {
    /// (i) an unheld item costs more than everything held that is ranked below it
    PropertyCheck undercut;
    /// (ii) an unheld item preferred to a held one costs more than it
    PropertyCheck preferred_costs_more;
    /// (iii) each agent pays exactly what she is paid
    PropertyCheck budget_balance;

    bool all_pass() const {
        return undercut.pass && preferred_costs_more.pass && budget_balance.pass;
    }

    friend bool operator==(const PriceReport&, const PriceReport&) = default;
};

inline constexpr std::size_t kMaxCounterexamples = 16;

/// Checks the three price properties for a network outcome. Throws
/// std::invalid_argument if the table's personalized entries do not match
/// the network's links exactly.
PriceReport verify_price_properties(const NetworkInstance& inst, const DirectedNetwork& net,
                                    const PriceTable& table);

/// The same construction and checks applied to an exclusive allocation; the
/// payment for an item goes to its original owner.
PriceReport verify_cap_price_properties(const CapInstance& inst, const Allocation& alloc,
                                        const PriceTable& table);

}  // namespace qttc
