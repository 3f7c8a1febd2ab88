#include "qttc/core_verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qttc {

using boost::multiprecision::cpp_int;

bool dominates(const Preference& pref, std::span<const Id> bundle, Id candidate) {
    const std::size_t candidate_rank = rank(pref, candidate);
    for (Id k : bundle) {
        if (k == candidate) return true;
    }
    for (Id k : bundle) {
        if (rank(pref, k) > candidate_rank) return false;
    }
    return true;
}

namespace {

/// gain(i, j): member i is better off receiving from agent j. Witness and
/// offered-item lookups are filled in by the builders below.
struct GainTable {
    std::size_t n = 0;
    std::vector<char> gain;
    std::vector<std::optional<Id>> witness;  // indexed like gain
    std::vector<Id> offered;                 // CAP only, indexed like gain

    bool at(Id i, Id j) const { return gain[static_cast<std::size_t>(i) * n + j] != 0; }
    std::size_t index(Id i, Id j) const { return static_cast<std::size_t>(i) * n + j; }
};

/// Worst element of a bundle under a rank table, or nullopt for an empty one.
std::optional<Id> worst_of(std::span<const Id> bundle, const std::vector<std::uint32_t>& ranks) {
    std::optional<Id> worst;
    for (Id k : bundle) {
        if (!worst || ranks[k] > ranks[*worst]) worst = k;
    }
    return worst;
}

GainTable network_gains(const NetworkInstance& inst, const DirectedNetwork& net, BlockingRule rule) {
    const std::size_t n = inst.agent_count();
    GainTable table{n, std::vector<char>(n * n, 0), std::vector<std::optional<Id>>(n * n), {}};
    std::vector<bool> held(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& bundle = net.assignments[i];
        if (bundle.empty() && inst.quotas[i] == 0) continue;
        const auto ranks = rank_table(inst.preferences[i]);
        const auto worst = worst_of(bundle, ranks);
        const bool free_slot = rule == BlockingRule::quota_aware && bundle.size() < inst.quotas[i];
        std::fill(held.begin(), held.end(), false);
        for (Id k : bundle) held[k] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (held[j]) continue;
            const auto cell = table.index(static_cast<Id>(i), static_cast<Id>(j));
            if (worst && ranks[j] < ranks[*worst]) {
                table.gain[cell] = 1;
                table.witness[cell] = worst;
            } else if (free_slot) {
                table.gain[cell] = 1;
            }
        }
    }
    return table;
}

GainTable cap_gains(const CapInstance& inst, const Allocation& alloc) {
    const std::size_t n = inst.agent_count();
    GainTable table{n, std::vector<char>(n * n, 0), std::vector<std::optional<Id>>(n * n),
                    std::vector<Id>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto ranks = rank_table(inst.preferences[i]);
        const auto worst = worst_of(alloc.bundles[i], ranks);
        if (!worst) continue;
        for (std::size_t j = 0; j < n; ++j) {
            std::optional<Id> best;
            for (Id g : inst.endowments[j]) {
                // not dominated: not held and strictly better than the worst held item
                if (ranks[g] < ranks[*worst] &&
                    std::find(alloc.bundles[i].begin(), alloc.bundles[i].end(), g) == alloc.bundles[i].end() &&
                    (!best || ranks[g] < ranks[*best])) {
                    best = g;
                }
            }
            if (!best) continue;
            const auto cell = table.index(static_cast<Id>(i), static_cast<Id>(j));
            table.gain[cell] = 1;
            table.witness[cell] = worst;
            table.offered[cell] = *best;
        }
    }
    return table;
}

BlockingCertificate make_certificate(const GainTable& table, std::vector<Id> coalition,
                                     std::vector<Id> permutation, bool with_offers) {
    BlockingCertificate cert;
    const std::size_t k = coalition.size();
    cert.witnesses.reserve(k);
    for (std::size_t idx = 0; idx < k; ++idx) {
        cert.witnesses.push_back(table.witness[table.index(coalition[idx], permutation[idx])]);
    }
    if (with_offers) {
        cert.offered_items.resize(k);
        for (std::size_t idx = 0; idx < k; ++idx) {
            const Id giver = permutation[idx];
            const auto pos = std::lower_bound(coalition.begin(), coalition.end(), giver) - coalition.begin();
            cert.offered_items[static_cast<std::size_t>(pos)] =
                table.offered[table.index(coalition[idx], giver)];
        }
    }
    cert.coalition = std::move(coalition);
    cert.permutation = std::move(permutation);
    return cert;
}

/// Validates (M, p) and returns both sorted by member.
std::pair<std::vector<Id>, std::vector<Id>> normalize(std::span<const Id> coalition,
                                                      std::span<const Id> permutation,
                                                      std::size_t n) {
    if (coalition.empty()) throw std::invalid_argument("coalition must be non-empty");
    if (coalition.size() != permutation.size()) {
        throw std::invalid_argument("permutation size does not match coalition size");
    }
    std::vector<std::size_t> order(coalition.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return coalition[a] < coalition[b]; });
    std::vector<Id> members;
    std::vector<Id> targets;
    for (auto idx : order) {
        members.push_back(coalition[idx]);
        targets.push_back(permutation[idx]);
    }
    if (members.back() >= n) throw std::invalid_argument("coalition references unknown agent");
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw std::invalid_argument("coalition repeats an agent");
    }
    auto sorted_targets = targets;
    std::sort(sorted_targets.begin(), sorted_targets.end());
    if (sorted_targets != members) throw std::invalid_argument("permutation is not a bijection on the coalition");
    return {std::move(members), std::move(targets)};
}

std::optional<BlockingCertificate> check_with(const GainTable& table, std::span<const Id> coalition,
                                              std::span<const Id> permutation, bool with_offers) {
    auto [members, targets] = normalize(coalition, permutation, table.n);
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
        if (!table.at(members[idx], targets[idx])) return std::nullopt;
    }
    return make_certificate(table, std::move(members), std::move(targets), with_offers);
}

/// Canonical exhaustive search over (M, p).
std::optional<BlockingCertificate> search(const GainTable& table, std::size_t max_size, bool with_offers) {
    const std::size_t n = table.n;
    const std::size_t limit = std::min(max_size, n);
    std::vector<Id> members;
    std::vector<Id> targets;
    for (std::size_t size = 1; size <= limit; ++size) {
        std::vector<std::size_t> combo(size);
        std::iota(combo.begin(), combo.end(), 0);
        for (;;) {
            members.assign(combo.begin(), combo.end());
            // every member needs at least one gainful source and one taker inside M
            bool viable = true;
            for (Id i : members) {
                bool out = false;
                bool in = false;
                for (Id j : members) {
                    out = out || table.at(i, j);
                    in = in || table.at(j, i);
                }
                if (!out || !in) {
                    viable = false;
                    break;
                }
            }
            if (viable) {
                targets = members;
                do {
                    bool blocks = true;
                    for (std::size_t idx = 0; idx < size && blocks; ++idx) {
                        blocks = table.at(members[idx], targets[idx]);
                    }
                    if (blocks) return make_certificate(table, members, targets, with_offers);
                } while (std::next_permutation(targets.begin(), targets.end()));
            }

            // next combination in lexicographic order
            std::size_t pos = size;
            while (pos > 0 && combo[pos - 1] == n - size + pos - 1) --pos;
            if (pos == 0) break;
            ++combo[pos - 1];
            for (std::size_t k = pos; k < size; ++k) combo[k] = combo[k - 1] + 1;
        }
    }
    return std::nullopt;
}

void require_feasible(const NetworkInstance& inst, const DirectedNetwork& net) {
    if (!is_feasible_network(inst, net)) throw std::invalid_argument("network is not feasible");
}

void require_feasible(const CapInstance& inst, const Allocation& alloc) {
    if (!is_feasible_allocation(inst, alloc)) throw std::invalid_argument("allocation is not feasible");
}

std::string describe(const cpp_int& size) {
    std::ostringstream msg;
    msg << "search space too large: " << size << " candidate networks";
    return msg.str();
}

cpp_int binomial(std::size_t n, std::size_t k) {
    cpp_int c = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        c *= n - k + j;
        c /= j;
    }
    return c;
}

/// All subsets of {0..n-1} with at most `limit` elements, by size, then lexicographically.
std::vector<std::vector<Id>> small_subsets(std::size_t n, std::size_t limit) {
    std::vector<std::vector<Id>> out;
    out.emplace_back();
    for (std::size_t size = 1; size <= std::min(limit, n); ++size) {
        std::vector<Id> combo(size);
        std::iota(combo.begin(), combo.end(), 0);
        for (;;) {
            out.push_back(combo);
            std::size_t pos = size;
            while (pos > 0 && combo[pos - 1] == n - size + pos - 1) --pos;
            if (pos == 0) break;
            ++combo[pos - 1];
            for (std::size_t k = pos; k < size; ++k) combo[k] = combo[k - 1] + 1;
        }
    }
    return out;
}

}  // namespace

std::optional<BlockingCertificate> check_blocking(const NetworkInstance& inst, const DirectedNetwork& net,
                                                  std::span<const Id> coalition,
                                                  std::span<const Id> permutation, BlockingRule rule) {
    require_feasible(inst, net);
    return check_with(network_gains(inst, net, rule), coalition, permutation, false);
}

std::optional<BlockingCertificate> find_blocking_coalition(const NetworkInstance& inst,
                                                           const DirectedNetwork& net,
                                                           std::size_t max_coalition_size,
                                                           BlockingRule rule) {
    require_feasible(inst, net);
    return search(network_gains(inst, net, rule), max_coalition_size, false);
}

bool in_core(const NetworkInstance& inst, const DirectedNetwork& net, BlockingRule rule) {
    if (!is_feasible_network(inst, net)) return false;
    return !search(network_gains(inst, net, rule), kUnboundedCoalition, false);
}

SearchSpaceTooLarge::SearchSpaceTooLarge(cpp_int size)
    : std::runtime_error(describe(size)), size_(std::move(size)) {}

cpp_int network_search_space(const NetworkInstance& inst) {
    const std::size_t n = inst.agent_count();
    cpp_int total = 1;
    for (auto q : inst.quotas) {
        cpp_int choices = 0;
        for (std::size_t k = 0; k <= std::min<std::size_t>(q, n); ++k) choices += binomial(n, k);
        total *= choices;
    }
    return total;
}

void for_each_feasible_network(const NetworkInstance& inst, EnumerationMode mode,
                               const std::function<void(const DirectedNetwork&)>& visit,
                               std::uint64_t max_search_space) {
    require_valid(inst);
    const auto space = network_search_space(inst);
    if (space > max_search_space) throw SearchSpaceTooLarge(space);

    const std::size_t n = inst.agent_count();
    std::vector<std::vector<std::vector<Id>>> choices(n);
    for (std::size_t i = 0; i < n; ++i) choices[i] = small_subsets(n, inst.quotas[i]);

    const bool balanced = mode == EnumerationMode::balanced;
    DirectedNetwork net;
    net.assignments.resize(n);
    std::vector<std::size_t> indeg(n, 0);

    std::function<void(std::size_t)> descend = [&](std::size_t agent) {
        if (agent == n) {
            if (!balanced || is_balanced(net)) visit(net);
            return;
        }
        for (const auto& subset : choices[agent]) {
            bool prune = false;
            for (Id j : subset) {
                // a balanced network has indeg(j) = |A(j)| <= q(j)
                if (++indeg[j] > inst.quotas[j] && balanced) prune = true;
            }
            if (!prune) {
                net.assignments[agent] = subset;
                descend(agent + 1);
            }
            for (Id j : subset) --indeg[j];
        }
        net.assignments[agent].clear();
    };
    descend(0);
}

std::vector<DirectedNetwork> enumerate_core(const NetworkInstance& inst, EnumerationMode mode,
                                            BlockingRule rule, std::uint64_t max_search_space) {
    std::vector<DirectedNetwork> core;
    for_each_feasible_network(
        inst, mode,
        [&](const DirectedNetwork& net) {
            if (in_core(inst, net, rule)) core.push_back(net);
        },
        max_search_space);
    std::sort(core.begin(), core.end());
    return core;
}

std::optional<BlockingCertificate> check_cap_blocking(const CapInstance& inst, const Allocation& alloc,
                                                      std::span<const Id> coalition,
                                                      std::span<const Id> permutation) {
    require_feasible(inst, alloc);
    return check_with(cap_gains(inst, alloc), coalition, permutation, true);
}

std::optional<BlockingCertificate> cap_find_blocking(const CapInstance& inst, const Allocation& alloc,
                                                     std::size_t max_coalition_size) {
    require_feasible(inst, alloc);
    return search(cap_gains(inst, alloc), max_coalition_size, true);
}

bool cap_in_core(const CapInstance& inst, const Allocation& alloc) {
    if (!is_feasible_allocation(inst, alloc)) return false;
    return !search(cap_gains(inst, alloc), kUnboundedCoalition, true);
}

}  // namespace qttc
