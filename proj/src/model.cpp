#include "qttc/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qttc {

std::size_t rank(const Preference& pref, Id id) {
    const auto& order = pref.order();
    auto it = std::find(order.begin(), order.end(), id);
    if (it == order.end()) {
        throw std::out_of_range("id out of range");
    }
    return static_cast<std::size_t>(it - order.begin());
}

std::vector<std::uint32_t> rank_table(const Preference& pref) {
    std::vector<std::uint32_t> table(pref.size());
    for (std::size_t pos = 0; pos < pref.size(); ++pos) {
        table.at(pref[pos]) = static_cast<std::uint32_t>(pos);
    }
    return table;
}

std::vector<std::size_t> DirectedNetwork::in_degrees() const {
    std::vector<std::size_t> indeg(assignments.size(), 0);
    for (const auto& row : assignments) {
        for (Id j : row) {
            indeg.at(j) += 1;
        }
    }
    return indeg;
}

std::vector<Id> CapInstance::owners() const {
    std::vector<Id> owner(item_count, 0);
    for (std::size_t i = 0; i < endowments.size(); ++i) {
        for (Id g : endowments[i]) {
            owner.at(g) = static_cast<Id>(i);
        }
    }
    return owner;
}

std::string ValidationResult::summary() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.message;
    }
    return out;
}

void validate_preference(const Preference& pref, std::size_t universe, Id agent,
                         std::vector<Violation>& out) {
    std::vector<bool> seen(universe, false);
    for (Id id : pref.order()) {
        if (id >= universe) {
            std::ostringstream msg;
            msg << "id " << id << " out of range in preference of agent " << agent;
            out.push_back({agent, msg.str()});
            continue;
        }
        if (seen[id]) {
            std::ostringstream msg;
            msg << "duplicate id " << id << " in preference of agent " << agent;
            out.push_back({agent, msg.str()});
        }
        seen[id] = true;
    }
    if (pref.size() != universe) {
        std::ostringstream msg;
        msg << "preference of agent " << agent << " has " << pref.size()
            << " entries, expected " << universe;
        out.push_back({agent, msg.str()});
    }
}

ValidationResult validate_network_instance(const NetworkInstance& inst) {
    ValidationResult result;
    const std::size_t n = inst.agent_count();
    if (n == 0) {
        result.violations.push_back({std::nullopt, "instance has no agents"});
        return result;
    }
    if (inst.preferences.size() != n) {
        std::ostringstream msg;
        msg << "expected " << n << " preferences, got " << inst.preferences.size();
        result.violations.push_back({std::nullopt, msg.str()});
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.quotas[i] > n) {
            std::ostringstream msg;
            msg << "q(" << i << ")=" << inst.quotas[i] << " exceeds n=" << n;
            result.violations.push_back({static_cast<Id>(i), msg.str()});
        }
    }
    for (std::size_t i = 0; i < inst.preferences.size(); ++i) {
        validate_preference(inst.preferences[i], n, static_cast<Id>(i), result.violations);
    }
    return result;
}

ValidationResult validate_cap_instance(const CapInstance& inst) {
    ValidationResult result;
    const std::size_t n = inst.agent_count();
    const std::size_t m = inst.item_count;
    if (n == 0) {
        result.violations.push_back({std::nullopt, "instance has no agents"});
        return result;
    }
    if (m == 0) {
        result.violations.push_back({std::nullopt, "instance has no items"});
    }
    if (inst.preferences.size() != n) {
        std::ostringstream msg;
        msg << "expected " << n << " preferences, got " << inst.preferences.size();
        result.violations.push_back({std::nullopt, msg.str()});
    }
    std::vector<std::optional<Id>> owner(m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto agent = static_cast<Id>(i);
        if (inst.endowments[i].empty()) {
            std::ostringstream msg;
            msg << "endowment of agent " << i << " is empty";
            result.violations.push_back({agent, msg.str()});
        }
        for (Id g : inst.endowments[i]) {
            std::ostringstream msg;
            if (g >= m) {
                msg << "item " << g << " out of range in endowment of agent " << i;
                result.violations.push_back({agent, msg.str()});
            } else if (owner[g]) {
                msg << "item " << g << " endowed to both agent " << *owner[g] << " and agent " << i;
                result.violations.push_back({agent, msg.str()});
            } else {
                owner[g] = agent;
            }
        }
    }
    for (std::size_t g = 0; g < m; ++g) {
        if (!owner[g]) {
            std::ostringstream msg;
            msg << "item " << g << " is not endowed to any agent";
            result.violations.push_back({std::nullopt, msg.str()});
        }
    }
    for (std::size_t i = 0; i < inst.preferences.size(); ++i) {
        validate_preference(inst.preferences[i], m, static_cast<Id>(i), result.violations);
    }
    return result;
}

void require_valid(const NetworkInstance& inst) {
    auto result = validate_network_instance(inst);
    if (!result.ok()) throw std::invalid_argument("invalid network instance: " + result.summary());
}

void require_valid(const CapInstance& inst) {
    auto result = validate_cap_instance(inst);
    if (!result.ok()) throw std::invalid_argument("invalid cap instance: " + result.summary());
}

namespace {

void check_shape(const std::vector<std::vector<Id>>& sets, std::size_t agents,
                 std::size_t universe, const char* what) {
    if (sets.size() != agents) {
        std::ostringstream msg;
        msg << what << " has " << sets.size() << " agents, instance has " << agents;
        throw std::invalid_argument(msg.str());
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (Id id : sets[i]) {
            if (id >= universe) {
                std::ostringstream msg;
                msg << what << " of agent " << i << " references unknown id " << id;
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

bool has_duplicates(std::vector<Id> ids) {
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
}

}  // namespace

bool is_feasible_network(const NetworkInstance& inst, const DirectedNetwork& net) {
    const std::size_t n = inst.agent_count();
    check_shape(net.assignments, n, n, "network");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = net.assignments[i];
        if (has_duplicates(row) || row.size() > inst.quotas[i]) return false;
    }
    return true;
}

bool is_balanced(const DirectedNetwork& net) {
    const auto indeg = net.in_degrees();
    for (std::size_t i = 0; i < net.agent_count(); ++i) {
        if (indeg[i] != net.assignments[i].size()) return false;
    }
    return true;
}

bool is_feasible_allocation(const CapInstance& inst, const Allocation& alloc) {
    check_shape(alloc.bundles, inst.agent_count(), inst.item_count, "allocation");
    std::vector<bool> taken(inst.item_count, false);
    for (std::size_t i = 0; i < alloc.agent_count(); ++i) {
        const auto& bundle = alloc.bundles[i];
        if (bundle.size() != inst.quota(static_cast<Id>(i))) return false;
        for (Id g : bundle) {
            if (taken[g]) return false;
            taken[g] = true;
        }
    }
    return true;
}

void canonicalize(std::vector<std::vector<Id>>& sets) {
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
}

}  // namespace qttc
