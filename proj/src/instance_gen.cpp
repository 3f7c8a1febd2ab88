#include "qttc/instance_gen.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qttc {

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    // largest multiple of bound that fits; draws at or above it are rejected
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::vector<Id> SeededRng::permutation(std::size_t size) {
    std::vector<Id> out(size);
    std::iota(out.begin(), out.end(), Id{0});
    for (std::size_t k = size; k > 1; --k) {
        std::swap(out[k - 1], out[below(k)]);
    }
    return out;
}

namespace {

void check_config(const GenConfig& cfg, InstanceKind expected) {
    if (cfg.kind != expected) throw std::invalid_argument("generator called with the wrong instance kind");
    if (cfg.agents == 0) throw std::invalid_argument("agents must be at least 1");
    if (cfg.agents > std::numeric_limits<Id>::max() / 2) throw std::invalid_argument("too many agents");
    if (expected == InstanceKind::network && cfg.max_quota == 0) {
        throw std::invalid_argument("max quota must be at least 1");
    }
    if (expected == InstanceKind::cap && cfg.max_endowment == 0) {
        throw std::invalid_argument("max endowment must be at least 1");
    }
}

}  // namespace

NetworkInstance random_network_instance(const GenConfig& cfg) {
    check_config(cfg, InstanceKind::network);
    SeededRng rng(cfg.seed);
    const std::size_t n = cfg.agents;
    const std::uint64_t top = std::min<std::uint64_t>(cfg.max_quota, n);

    NetworkInstance inst;
    inst.quotas.reserve(n);
    for (std::size_t i = 0; i < n; ++i) inst.quotas.push_back(static_cast<std::uint32_t>(rng.between(1, top)));
    inst.preferences.reserve(n);
    for (std::size_t i = 0; i < n; ++i) inst.preferences.emplace_back(rng.permutation(n));
    return inst;
}

CapInstance random_cap_instance(const GenConfig& cfg) {
    check_config(cfg, InstanceKind::cap);
    SeededRng rng(cfg.seed);
    const std::size_t n = cfg.agents;

    std::vector<std::size_t> sizes(n);
    for (auto& s : sizes) s = rng.between(1, cfg.max_endowment);
    CapInstance inst;
    inst.item_count = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});

    const auto items = rng.permutation(inst.item_count);
    inst.endowments.resize(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        inst.endowments[i].assign(items.begin() + static_cast<std::ptrdiff_t>(next),
                                  items.begin() + static_cast<std::ptrdiff_t>(next + sizes[i]));
        std::sort(inst.endowments[i].begin(), inst.endowments[i].end());
        next += sizes[i];
    }
    inst.preferences.reserve(n);
    for (std::size_t i = 0; i < n; ++i) inst.preferences.emplace_back(rng.permutation(inst.item_count));
    return inst;
}

CanonicalExample canonical_example(int id) {
    auto identity = [](std::size_t n) {
        std::vector<Id> order(n);
        std::iota(order.begin(), order.end(), Id{0});
        return Preference(std::move(order));
    };
    CanonicalExample ex;
    switch (id) {
        case 1:
            ex.instance.quotas = {1, 3, 3};
            ex.arbitrary_preferences = true;
            break;
        case 2:
            ex.instance.quotas = {1, 4, 4, 4};
            ex.arbitrary_preferences = true;
            break;
        case 3:
            // agent 0 prefers her own item; agent 1's order is free, 0 > 1 by default
            ex.instance.quotas = {1, 2};
            break;
        default:
            throw std::invalid_argument("unknown example id " + std::to_string(id));
    }
    const std::size_t n = ex.instance.quotas.size();
    ex.instance.preferences.assign(n, identity(n));
    return ex;
}

}  // namespace qttc
