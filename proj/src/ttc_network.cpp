#include "qttc/ttc_network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qttc {

std::vector<std::vector<Id>> find_cycles(std::span<const Id> pointers) {
    const std::size_t n = pointers.size();
    // walk[v] = 1 + index of the start whose walk first reached v, 0 if unseen
    std::vector<std::size_t> walk(n, 0);
    std::vector<std::vector<Id>> cycles;

    for (std::size_t start = 0; start < n; ++start) {
        if (walk[start] != 0) continue;
        const std::size_t tag = start + 1;
        Id v = static_cast<Id>(start);
        while (v != kNoTarget && walk[v] == 0) {
            walk[v] = tag;
            const Id next = pointers[v];
            if (next != kNoTarget && next >= n) {
                throw std::invalid_argument("pointer of agent " + std::to_string(v) +
                                            " targets unknown agent " + std::to_string(next));
            }
            v = next;
        }
        if (v == kNoTarget || walk[v] != tag) continue;

        std::vector<Id> cycle;
        Id u = v;
        do {
            cycle.push_back(u);
            u = pointers[u];
        } while (u != v);
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        cycles.push_back(std::move(cycle));
    }

    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return cycles;
}

namespace {

class NetworkRun {
public:
    explicit NetworkRun(const NetworkInstance& inst)
        : inst_(inst),
          n_(inst.agent_count()),
          remaining_(inst.quotas),
          removed_(n_, false),
          cursor_(n_, 0),
          received_(n_),
          pointers_(n_, kNoTarget) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (remaining_[i] == 0) removed_[i] = true;
        }
        settle();
    }

    NetworkSolution run() {
        NetworkSolution out;
        std::uint32_t stage = 0;
        while (!active_.empty()) {
            ++stage;
            for (Id i : active_) pointers_[i] = head(i);
            const auto cycles = find_cycles(pointers_);
            if (cycles.empty()) {
                throw std::logic_error("no cycle among active agents at stage " + std::to_string(stage));
            }
            for (const auto& cycle : cycles) {
                for (Id member : cycle) {
                    const Id item = pointers_[member];
                    out.trace.transfers.push_back({member, item, stage});
                    received_[member].push_back(item);
                    ++cursor_[member];  // the received item is always the list head
                    --remaining_[member];
                }
            }
            for (Id i : active_) {
                pointers_[i] = kNoTarget;
                if (remaining_[i] == 0) removed_[i] = true;
            }
            settle();
        }
        out.trace.stages = stage;
        out.network.assignments = std::move(received_);
        canonicalize(out.network.assignments);
        return out;
    }

private:
    /// Advances past struck entries; returns kNoTarget on an empty list.
    Id head(Id agent) {
        const auto& order = inst_.preferences[agent].order();
        std::size_t& pos = cursor_[agent];
        while (pos < n_ && removed_[order[pos]]) ++pos;
        return pos < n_ ? order[pos] : kNoTarget;
    }

    /// Deactivates agents with empty lists until none remain, then rebuilds
    /// the active set.
    void settle() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!removed_[i] && head(static_cast<Id>(i)) == kNoTarget) {
                    removed_[i] = true;
                    changed = true;
                }
            }
        }
        active_.clear();
        for (std::size_t i = 0; i < n_; ++i) {
            if (!removed_[i]) active_.push_back(static_cast<Id>(i));
        }
    }

    const NetworkInstance& inst_;
    std::size_t n_;
    std::vector<std::uint32_t> remaining_;
    std::vector<bool> removed_;
    std::vector<std::size_t> cursor_;
    std::vector<std::vector<Id>> received_;
    PointerMap pointers_;
    std::vector<Id> active_;
};

}  // namespace

NetworkSolution solve_network(const NetworkInstance& inst) {
    require_valid(inst);
    return NetworkRun(inst).run();
}

}  // namespace qttc
