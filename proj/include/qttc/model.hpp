#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qttc {

/// Dense 0-based index of an agent or an item.
using Id = std::uint32_t;

/// Strict linear order over an id universe, most preferred first.
class Preference {
public:
    Preference() = default;
    explicit Preference(std::vector<Id> order) : order_(std::move(order)) {}

    const std::vector<Id>& order() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }
    Id operator[](std::size_t position) const { return order_[position]; }

    friend bool operator==(const Preference&, const Preference&) = default;

private:
    std::vector<Id> order_;
};

/// Position of `id` in `pref` (0 = most preferred). Throws std::out_of_range
/// if the id does not occur in the order.
std::size_t rank(const Preference& pref, Id id);

/// Inverse of a preference: table[id] = rank. Requires a valid permutation.
std::vector<std::uint32_t> rank_table(const Preference& pref);

/// Directed network problem with quotas: agents 0..n-1, each owning one item
/// (item j is agent j's), with quota q(i) and an order over all agents.
struct NetworkInstance {
    std::vector<std::uint32_t> quotas;
    std::vector<Preference> preferences;

    std::size_t agent_count() const noexcept { return quotas.size(); }

    friend bool operator==(const NetworkInstance&, const NetworkInstance&) = default;
};

/// A(i) for every agent: the agents whose items i consumes. Each set is kept
/// sorted ascending without duplicates.
struct DirectedNetwork {
    std::vector<std::vector<Id>> assignments;

    std::size_t agent_count() const noexcept { return assignments.size(); }
    std::vector<std::size_t> in_degrees() const;

    friend bool operator==(const DirectedNetwork&, const DirectedNetwork&) = default;
    friend auto operator<=>(const DirectedNetwork&, const DirectedNetwork&) = default;
};

/// Combinatorial allocation problem with exclusive allocations. Items 0..m-1
/// are partitioned among agents by `endowments`; q(i) = |S(i)|.
struct CapInstance {
    std::size_t item_count = 0;
    std::vector<std::vector<Id>> endowments;
    std::vector<Preference> preferences;

    std::size_t agent_count() const noexcept { return endowments.size(); }
    std::size_t quota(Id agent) const { return endowments.at(agent).size(); }
    /// owner[g] = the agent endowed with item g. Requires a valid instance.
    std::vector<Id> owners() const;

    friend bool operator==(const CapInstance&, const CapInstance&) = default;
};

/// Bundle per agent, each sorted ascending without duplicates.
struct Allocation {
    std::vector<std::vector<Id>> bundles;

    std::size_t agent_count() const noexcept { return bundles.size(); }

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct Violation {
    std::optional<Id> agent;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    /// All messages joined with "; ".
    std::string summary() const;
};

/// Checks that `pref` is a permutation of 0..universe-1. Violations are
/// attributed to `agent`.
void validate_preference(const Preference& pref, std::size_t universe, Id agent,
                         std::vector<Violation>& out);

ValidationResult validate_network_instance(const NetworkInstance& inst);
ValidationResult validate_cap_instance(const CapInstance& inst);

/// Throws std::invalid_argument with the violation summary unless valid.
void require_valid(const NetworkInstance& inst);
void require_valid(const CapInstance& inst);

/// |A(i)| <= q(i) for every agent. Throws std::invalid_argument if the network
/// has the wrong agent count or references an unknown agent.
bool is_feasible_network(const NetworkInstance& inst, const DirectedNetwork& net);

/// In-degree equals out-degree at every agent. Loops count toward both.
bool is_balanced(const DirectedNetwork& net);

/// Bundles pairwise disjoint and |A(i)| = q(i) exactly. Throws
/// std::invalid_argument on an unknown item or a wrong agent count.
bool is_feasible_allocation(const CapInstance& inst, const Allocation& alloc);

/// Sorts and deduplicates every set in place.
void canonicalize(std::vector<std::vector<Id>>& sets);

}  // namespace qttc
