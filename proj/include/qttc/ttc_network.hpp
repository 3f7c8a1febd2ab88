#pragma once

#include <limits>
#include <span>
#include <vector>

#include "qttc/model.hpp"
#include "qttc/trace.hpp"

namespace qttc {

/// Marks an agent that is not pointing in a pointer map.
inline constexpr Id kNoTarget = std::numeric_limits<Id>::max();

/// pointers[i] is the agent i points to, or kNoTarget.
using PointerMap = std::vector<Id>;

/// Cycles of the functional graph restricted to pointing agents.
///
/// Each cycle lists its members so that every member points to the next one
/// and the last points to the first; a self-loop is a cycle of length one.
/// Cycles start at their smallest member and are sorted by it. Agents on a
/// chain that ends at a non-pointing agent belong to no cycle. Runs in
/// O(pointers.size()). Throws std::invalid_argument on an out-of-range target.
std::vector<std::vector<Id>> find_cycles(std::span<const Id> pointers);

struct NetworkSolution {
    DirectedNetwork network;
    StageTrace trace;
};

/// Staged top-trading-cycles with quotas.
///
/// Every stage, each active agent points at the head of her remaining list and
/// every cycle is traded: each member receives the item of the agent she
/// points to. A receiver strikes that owner from her own list and uses up one
/// unit of quota. Agents whose quota reaches zero withdraw and are struck from
/// every list. Afterwards, any agent left with an empty list is deactivated
/// and struck as well, repeated until nothing changes, so active agents always
/// point at active agents. The run ends when no agent is active.
///
/// Throws std::invalid_argument on an invalid instance.
NetworkSolution solve_network(const NetworkInstance& inst);

}  // namespace qttc
