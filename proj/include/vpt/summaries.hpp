#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "vpt/machines.hpp"

namespace vpt {

/// Flattened automaton shape consumed by the summary algorithms. Works for
/// a single machine or for a synchronized product (states and stack symbols
/// are then pair codes).
struct VpaView {
    std::uint32_t num_states = 0;
    std::uint32_t num_stack = 0;

    struct CallT {
        StateId src;
        SymbolId sym;  // call symbol
        StackId push;
        StateId dst;
    };
    struct RetT {
        StateId src;
        SymbolId sym;  // return symbol
        StackId pop;
        StateId dst;
    };

    std::vector<CallT> calls;
    std::vector<RetT> rets;
};

VpaView view_of(const Vpa& m);
VpaView view_of(const Vpt& m);

/// Synchronized square of a view: states are pairs (s1,s2) coded as
/// s1*n+s2, stack symbols are pairs coded likewise. Both components read
/// the same input symbol.
VpaView square_view(const VpaView& v);

/// Well-nested summary reachability with shortest witnesses.
///
/// A pair (p,q) is summarized when some well nested word drives the machine
/// from (p, sigma) to (q, sigma) without ever popping below sigma. The
/// computation tracks minimal witness lengths and derivation parents so a
/// concrete shortest word can be rebuilt for any summarized pair.
class WellNestedSummaries {
public:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

    explicit WellNestedSummaries(const VpaView& view);

    bool reachable(StateId p, StateId q) const { return dist(p, q) != kInf; }
    std::uint64_t dist(StateId p, StateId q) const { return dist_[idx(p, q)]; }

    /// Shortest well nested witness word for a summarized pair, as a
    /// sequence of (is_call, view symbol id). Throws when not reachable.
    std::vector<std::pair<bool, SymbolId>> witness(StateId p, StateId q) const;

    std::uint32_t num_states() const { return n_; }

private:
    struct Deriv {
        enum class Kind : std::uint8_t { None, Eps, Surround, Concat } kind = Kind::None;
        std::uint32_t a = 0;  // Surround: call transition index; Concat: left pair index
        std::uint32_t b = 0;  // Surround: return transition index; Concat: right pair index
        std::uint32_t inner = 0;  // Surround: inner pair index
    };

    std::size_t idx(StateId p, StateId q) const { return static_cast<std::size_t>(p) * n_ + q; }

    void append_witness(std::size_t pair, std::vector<std::pair<bool, SymbolId>>& out) const;

    const VpaView* view_;
    std::uint32_t n_;
    std::vector<std::uint64_t> dist_;
    std::vector<Deriv> deriv_;
};

}  // namespace vpt
