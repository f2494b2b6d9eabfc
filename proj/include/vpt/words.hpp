#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vpt/alphabet.hpp"

namespace vpt {

/// One input symbol: a call or a return, identified by its id within the
/// respective partition of the structured alphabet.
struct InputSymbol {
    bool is_call;
    SymbolId id;

    bool operator==(const InputSymbol&) const = default;

    /// Calls order before returns; within a partition, by id.
    bool operator<(const InputSymbol& o) const {
        if (is_call != o.is_call) return is_call;
        return id < o.id;
    }

    /// Dense key for hashing: bit 0 = partition, rest = id.
    std::uint64_t key() const {
        return (static_cast<std::uint64_t>(id) << 1) | (is_call ? 1u : 0u);
    }
};

inline InputSymbol call_sym(SymbolId id) { return {true, id}; }
inline InputSymbol ret_sym(SymbolId id) { return {false, id}; }

using InputWord = std::vector<InputSymbol>;

/// True iff w is well nested: every return matches an earlier call and no
/// call is left open.
bool is_well_nested(const InputWord& w);

/// Nesting depth after each prefix of w: profile[t] is the depth once the
/// first t symbols are consumed. Empty when w is not a prefix of any well
/// nested word (depth would go negative).
std::vector<std::uint32_t> depth_profile(const InputWord& w);

/// Maximal nesting depth of a well nested word.
/// Throws std::invalid_argument when w is not well nested.
std::size_t height(const InputWord& w);

/// Pairs (call position, return position) of matching symbols, sorted by
/// call position. Throws std::invalid_argument when w is not well nested.
std::vector<std::pair<std::size_t, std::size_t>> matching(const InputWord& w);

}  // namespace vpt
