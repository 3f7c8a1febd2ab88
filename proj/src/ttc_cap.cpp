#include "qttc/ttc_cap.hpp"

#include <stdexcept>
#include <string>

#include "qttc/ttc_network.hpp"

namespace qttc {

CapSolution solve_cap(const CapInstance& inst) {
    require_valid(inst);
    const std::size_t n = inst.agent_count();
    const std::size_t m = inst.item_count;
    const auto owner = inst.owners();

    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = inst.quota(static_cast<Id>(i));
    std::vector<bool> transferred(m, false);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<Id> wanted(n, 0);
    PointerMap pointers(n, kNoTarget);
    std::vector<std::vector<Id>> bundles(n);

    auto top_item = [&](std::size_t agent) {
        const auto& order = inst.preferences[agent].order();
        std::size_t& pos = cursor[agent];
        while (pos < m && transferred[order[pos]]) ++pos;
        // remaining > 0 implies an own item is still untransferred
        if (pos == m) throw std::logic_error("agent " + std::to_string(agent) + " ran out of items");
        return order[pos];
    };

    CapSolution out;
    std::uint32_t stage = 0;
    for (;;) {
        bool any_active = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (remaining[i] == 0) {
                pointers[i] = kNoTarget;
                continue;
            }
            any_active = true;
            wanted[i] = top_item(i);
            pointers[i] = owner[wanted[i]];
        }
        if (!any_active) break;

        ++stage;
        const auto cycles = find_cycles(pointers);
        if (cycles.empty()) {
            throw std::logic_error("no cycle among active agents at stage " + std::to_string(stage));
        }
        for (const auto& cycle : cycles) {
            for (Id member : cycle) {
                const Id item = wanted[member];
                out.trace.transfers.push_back({member, item, stage});
                bundles[member].push_back(item);
                transferred[item] = true;
                --remaining[member];
            }
        }
    }

    out.trace.stages = stage;
    out.allocation.bundles = std::move(bundles);
    canonicalize(out.allocation.bundles);
    return out;
}

}  // namespace qttc
