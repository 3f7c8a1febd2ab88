#pragma once

#include "qttc/model.hpp"
#include "qttc/trace.hpp"

namespace qttc {

struct CapSolution {
    Allocation allocation;
    StageTrace trace;  // item ids are CAP item ids
};

/// Staged top-trading-cycles for exclusive allocations.
///
/// Each active agent points at the original owner of her most preferred
/// untransferred item and, when a cycle closes, receives exactly that item.
/// Transferred items are struck from every list. An agent withdraws once she
/// has received q(i) = |S(i)| items; since every trade also gives away one
/// endowed item, the run ends with all quotas filled and G partitioned.
///
/// Throws std::invalid_argument on an invalid instance.
CapSolution solve_cap(const CapInstance& inst);

}  // namespace qttc
