#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qttc::oracle {

namespace {

std::size_t position(const Preference& pref, Id id) {
    const auto& order = pref.order();
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin());
}

bool contains(const std::vector<Id>& set, Id id) {
    return std::find(set.begin(), set.end(), id) != set.end();
}

bool has_cycle(const std::vector<std::vector<bool>>& edge) {
    const std::size_t n = edge.size();
    std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
    std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
        color[v] = 1;
        for (std::size_t w = 0; w < n; ++w) {
            if (!edge[v][w]) continue;
            if (color[w] == 1) return true;
            if (color[w] == 0 && dfs(w)) return true;
        }
        color[v] = 2;
        return false;
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (color[v] == 0 && dfs(v)) return true;
    }
    return false;
}

}  // namespace

std::vector<Id> shapley_scarf_ttc(const std::vector<Preference>& prefs) {
    const std::size_t n = prefs.size();
    std::vector<Id> house(n, 0);
    std::vector<bool> gone(n, false);
    std::size_t left = n;
    while (left > 0) {
        std::vector<Id> points(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (gone[i]) continue;
            for (Id h : prefs[i].order()) {
                if (!gone[h]) {
                    points[i] = h;
                    break;
                }
            }
        }
        // walk from any remaining agent until a repeat; that closes a cycle
        std::vector<bool> on_cycle(n, false);
        for (std::size_t s = 0; s < n; ++s) {
            if (gone[s]) continue;
            std::vector<bool> seen(n, false);
            Id v = static_cast<Id>(s);
            while (!seen[v]) {
                seen[v] = true;
                v = points[v];
            }
            Id u = v;
            do {
                on_cycle[u] = true;
                u = points[u];
            } while (u != v);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (on_cycle[i]) house[i] = points[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (on_cycle[i]) {
                gone[i] = true;
                --left;
            }
        }
    }
    return house;
}

bool network_blocked(const NetworkInstance& inst, const DirectedNetwork& net, bool quota_aware) {
    const std::size_t n = inst.agent_count();
    std::vector<std::vector<bool>> gains(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& bundle = net.assignments[i];
        for (std::size_t j = 0; j < n; ++j) {
            const auto item = static_cast<Id>(j);
            if (contains(bundle, item)) continue;
            bool better = false;
            for (Id k : bundle) {
                better = better || position(inst.preferences[i], item) < position(inst.preferences[i], k);
            }
            const bool slot = quota_aware && bundle.size() < inst.quotas[i];
            gains[i][j] = better || slot;
        }
    }
    return has_cycle(gains);
}

bool cap_blocked(const CapInstance& inst, const Allocation& alloc) {
    const std::size_t n = inst.agent_count();
    std::vector<std::vector<bool>> gains(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& bundle = alloc.bundles[i];
        for (std::size_t j = 0; j < n; ++j) {
            for (Id g : inst.endowments[j]) {
                if (contains(bundle, g)) continue;
                for (Id k : bundle) {
                    if (position(inst.preferences[i], g) < position(inst.preferences[i], k)) gains[i][j] = true;
                }
            }
        }
    }
    return has_cycle(gains);
}

std::vector<DirectedNetwork> brute_force_networks(const NetworkInstance& inst, bool balanced_only) {
    const std::size_t n = inst.agent_count();
    if (n > 10) throw std::invalid_argument("brute force limited to 10 agents");
    const std::uint32_t subsets = 1u << n;
    std::vector<std::uint32_t> row(n, 0);
    std::vector<DirectedNetwork> out;
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = static_cast<std::uint32_t>(__builtin_popcount(row[i])) <= inst.quotas[i];
        }
        if (ok && balanced_only) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                std::uint32_t indeg = 0;
                for (std::size_t i = 0; i < n; ++i) indeg += (row[i] >> j) & 1u;
                ok = indeg == static_cast<std::uint32_t>(__builtin_popcount(row[j]));
            }
        }
        if (ok) {
            DirectedNetwork net;
            net.assignments.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if ((row[i] >> j) & 1u) net.assignments[i].push_back(static_cast<Id>(j));
                }
            }
            out.push_back(std::move(net));
        }
        std::size_t pos = 0;
        while (pos < n && ++row[pos] == subsets) row[pos++] = 0;
        if (pos == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> closed_form_stage_prices(std::uint32_t stages) {
    std::vector<std::uint64_t> out;
    for (std::uint32_t k = 1; k <= stages; ++k) out.push_back(std::uint64_t{1} << (stages - k));
    return out;
}

}  // namespace qttc::oracle
