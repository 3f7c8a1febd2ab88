#pragma once

#include <cstdint>
#include <vector>

#include "qttc/model.hpp"

namespace qttc {

/// One completed receipt: `receiver` obtained `item` during `stage` (1-based).
/// For network problems the item id is the owning agent's id.
struct Transfer {
    Id receiver = 0;
    Id item = 0;
    std::uint32_t stage = 0;

    friend bool operator==(const Transfer&, const Transfer&) = default;
};

/// Transfers in execution order. `stages` is the last stage with a transfer,
/// 0 when nothing was exchanged.
struct StageTrace {
    std::vector<Transfer> transfers;
    std::uint32_t stages = 0;

    friend bool operator==(const StageTrace&, const StageTrace&) = default;
};

}  // namespace qttc
