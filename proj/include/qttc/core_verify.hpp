#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qttc/model.hpp"

namespace qttc {

/// Unilateral hyper-relation: true iff `candidate` is in `bundle` or every
/// element of `bundle` is weakly preferred to it. An empty bundle dominates
/// every candidate.
bool dominates(const Preference& pref, std::span<const Id> bundle, Id candidate);

/// When does receiving item j make agent i better off at network A?
enum class BlockingRule {
    /// Only when A(i) does not dominate j under the hyper-relation.
    hyper_relation,
    /// As hyper_relation, and additionally whenever |A(i)| < q(i) and j is not
    /// already in A(i): a free quota slot can absorb j without giving anything
    /// up. An agent with q(i) = 0 never gains.
    quota_aware,
};

/// Proof that a coalition blocks. Entries are aligned with `coalition`, which
/// is sorted ascending: member coalition[k] receives the item of
/// permutation[k].
struct BlockingCertificate {
    std::vector<Id> coalition;
    std::vector<Id> permutation;
    /// An item of A(i) that i likes less than what she receives. Empty only
    /// under BlockingRule::quota_aware when i gains through a free quota slot.
    std::vector<std::optional<Id>> witnesses;
    /// Combinatorial allocations only: the item coalition[k] hands over,
    /// taken from her own endowment.
    std::vector<Id> offered_items;

    friend bool operator==(const BlockingCertificate&, const BlockingCertificate&) = default;
};

inline constexpr std::size_t kUnboundedCoalition = std::numeric_limits<std::size_t>::max();
inline constexpr std::uint64_t kDefaultSearchSpaceCap = 10'000'000;

/// Evaluates one coalition and permutation. Returns a certificate iff every
/// member gains from what the permutation assigns her. Throws
/// std::invalid_argument if `permutation` is not a bijection on `coalition`,
/// the coalition is empty or repeats an agent, or the network is infeasible.
std::optional<BlockingCertificate> check_blocking(const NetworkInstance& inst,
                                                  const DirectedNetwork& net,
                                                  std::span<const Id> coalition,
                                                  std::span<const Id> permutation,
                                                  BlockingRule rule = BlockingRule::quota_aware);

/// Exhaustive search: coalitions by increasing size, members in lexicographic
/// order, permutations in lexicographic order. Returns the first certificate.
std::optional<BlockingCertificate> find_blocking_coalition(
    const NetworkInstance& inst, const DirectedNetwork& net,
    std::size_t max_coalition_size = kUnboundedCoalition,
    BlockingRule rule = BlockingRule::quota_aware);

/// Feasible and not blocked by any coalition.
bool in_core(const NetworkInstance& inst, const DirectedNetwork& net,
             BlockingRule rule = BlockingRule::quota_aware);

enum class EnumerationMode { balanced, all };

class SearchSpaceTooLarge : public std::runtime_error {
public:
    explicit SearchSpaceTooLarge(boost::multiprecision::cpp_int size);
    const boost::multiprecision::cpp_int& size() const noexcept { return size_; }

private:
    boost::multiprecision::cpp_int size_;
};

/// Number of feasible networks: product over agents of sum_{k<=q(i)} C(n,k).
boost::multiprecision::cpp_int network_search_space(const NetworkInstance& inst);

/// Calls `visit` on every feasible network (mode all) or every feasible and
/// balanced one (mode balanced). Throws SearchSpaceTooLarge when the feasible
/// search space exceeds `max_search_space`.
void for_each_feasible_network(const NetworkInstance& inst, EnumerationMode mode,
                               const std::function<void(const DirectedNetwork&)>& visit,
                               std::uint64_t max_search_space = kDefaultSearchSpaceCap);

/// Every enumerated network that lies in the core, sorted ascending.
std::vector<DirectedNetwork> enumerate_core(const NetworkInstance& inst,
                                            EnumerationMode mode = EnumerationMode::balanced,
                                            BlockingRule rule = BlockingRule::quota_aware,
                                            std::uint64_t max_search_space = kDefaultSearchSpaceCap);

/// Combinatorial allocations. Bundles of feasible allocations are always full,
/// so only the hyper-relation matters. Member i gains from p(i) iff some item
/// of S(p(i)) is not dominated by A(i); the offered item is the one i likes
/// best among those. Same errors as check_blocking.
std::optional<BlockingCertificate> check_cap_blocking(const CapInstance& inst,
                                                      const Allocation& alloc,
                                                      std::span<const Id> coalition,
                                                      std::span<const Id> permutation);

std::optional<BlockingCertificate> cap_find_blocking(
    const CapInstance& inst, const Allocation& alloc,
    std::size_t max_coalition_size = kUnboundedCoalition);

bool cap_in_core(const CapInstance& inst, const Allocation& alloc);

}  // namespace qttc
