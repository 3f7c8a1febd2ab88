#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qttc/model.hpp"

namespace qttc {

enum class InstanceKind { network, cap };

struct GenConfig {
    InstanceKind kind = InstanceKind::network;
    std::size_t agents = 1;
    std::uint32_t max_quota = 1;      // network instances
    std::uint32_t max_endowment = 1;  // cap instances
    std::uint64_t seed = 0;
};

/// Platform-independent randomness: std::mt19937_64 output is fixed by the
/// standard, and draws below avoid the implementation-defined distributions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound) by rejection of the biased tail. bound > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// Uniform random permutation of 0..size-1 (Fisher-Yates from the top).
    std::vector<Id> permutation(std::size_t size);

private:
    std::mt19937_64 engine_;
};

/// Quotas uniform in [1, min(max_quota, n)]; preferences independent uniform
/// permutations. Throws std::invalid_argument on a bad config.
NetworkInstance random_network_instance(const GenConfig& cfg);

/// Endowment sizes uniform in [1, max_endowment]; a uniform permutation of
/// the items is cut into consecutive blocks of those sizes; preferences are
/// uniform permutations of all items.
CapInstance random_cap_instance(const GenConfig& cfg);

struct CanonicalExample {
    NetworkInstance instance;
    /// The example's claim holds for every preference profile; the stored
    /// preferences are identity orders standing in for arbitrary ones.
    bool arbitrary_preferences = false;
};

/// Examples 1-3 with 0-based agent ids. Throws std::invalid_argument for any
/// other id.
CanonicalExample canonical_example(int id);

}  // namespace qttc
