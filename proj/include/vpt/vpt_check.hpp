#pragma once

#include <cstdint>
#include <optional>

#include "vpt/machines.hpp"
#include "vpt/verdicts.hpp"

namespace vpt {

/// Height above which a non-functionality witness can always be shrunk:
/// 8 * N^4 for a machine with N states. Throws on N = 0 and on overflow.
std::uint64_t height_bound(std::uint64_t num_states);

struct CheckOptions {
    /// Height cap for the on-demand expansion. Defaults to
    /// height_bound(N), which makes the verdict exact.
    std::optional<std::uint64_t> height_cap;
    /// Maximum number of expanded pair configurations before the search
    /// gives up with an Inconclusive verdict.
    std::uint64_t node_budget = 1'000'000;
};

/// Functionality of a VPT, decided by the delay-uniqueness search over the
/// square of the bounded-height expansion.
///
/// Non-functional verdicts are always sound (the witness re-verifies via
/// transduce). Functional verdicts are exact iff the cap reaches
/// height_bound(N); below that they are labeled as holding up to the cap
/// only (exact = false). Exhausting the node budget yields Inconclusive.
FunctionalityVerdict check_functional(const Vpt& t, const CheckOptions& opts = {});

/// Exact comparison of dom(T1) and dom(T2) via lazy determinization with
/// summary sets. Inconclusive when the determinized product outgrows the
/// budget; otherwise the verdict is exact and Differ carries a shortest
/// word in the symmetric difference.
DomainEquivVerdict domain_equiv(const Vpt& t1, const Vpt& t2, std::uint64_t node_budget = 1'000'000);

/// Equivalence of functional VPTs: equal domains plus functionality of the
/// disjoint union. Both inputs must pass check_functional (throws
/// std::invalid_argument otherwise).
EquivVerdict check_equiv_functional(const Vpt& t1, const Vpt& t2, const CheckOptions& opts = {});

}  // namespace vpt
