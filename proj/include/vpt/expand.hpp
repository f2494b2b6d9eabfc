#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "vpt/machines.hpp"

namespace vpt {

/// On-demand expansion of a VPT into the FST that simulates it on inputs
/// of height at most `cap`. States are (control state, stack content) with
/// |stack| <= cap; call successors are blocked at the cap. The expansion
/// accepts exactly { u in dom(T) | h(u) <= cap } and reproduces T's
/// outputs there. Nothing is materialized until asked for.
class LazyExpansion {
public:
    using Node = std::uint64_t;

    LazyExpansion(const Vpt& t, std::size_t cap);

    std::vector<Node> initials();
    bool accepting(Node n) const;

    /// Enumerates successors on every input symbol, in transition
    /// declaration order: fn(symbol, output, destination node).
    template <typename F>
    void successors(Node n, F&& fn) {
        StateId q = node_state(n);
        std::uint32_t stack = node_stack(n);
        if (stack_depth(stack) < cap_) {
            for (std::uint32_t i : calls_from_[q]) {
                const VptCallTrans& t = base_->call_trans[i];
                fn(call_sym(t.call), t.out, make_node(t.dst, push(stack, t.push)));
            }
        }
        if (stack_depth(stack) > 0) {
            StackId top = top_sym(stack);
            for (std::uint32_t i : rets_from_[q]) {
                const VptRetTrans& t = base_->ret_trans[i];
                if (t.pop != top) continue;
                fn(ret_sym(t.ret), t.out, make_node(t.dst, pop(stack)));
            }
        }
    }

    StateId node_state(Node n) const { return nodes_[n].state; }
    std::vector<StackId> node_stack_syms(Node n) const;
    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t cap() const { return cap_; }
    const Vpt& base() const { return *base_; }

private:
    struct StackNode {
        std::uint32_t parent;  // UINT32_MAX at the bottom sentinel
        StackId sym;
        std::uint32_t depth;
    };
    struct ExpNode {
        StateId state;
        std::uint32_t stack;
    };

    std::uint32_t push(std::uint32_t stack, StackId sym);
    std::uint32_t pop(std::uint32_t stack) const { return stack_nodes_[stack].parent; }
    std::uint32_t stack_depth(std::uint32_t stack) const { return stack_nodes_[stack].depth; }
    StackId top_sym(std::uint32_t stack) const { return stack_nodes_[stack].sym; }
    std::uint32_t node_stack(Node n) const { return nodes_[n].stack; }
    Node make_node(StateId q, std::uint32_t stack);

    const Vpt* base_;
    std::size_t cap_;
    std::vector<StackNode> stack_nodes_;
    std::unordered_map<std::uint64_t, std::uint32_t> stack_index_;
    std::vector<ExpNode> nodes_;
    std::unordered_map<std::uint64_t, Node> node_index_;
    std::vector<std::vector<std::uint32_t>> calls_from_;
    std::vector<std::vector<std::uint32_t>> rets_from_;
};

/// Outputs of the expansion's accepting runs on u (the height-capped
/// transduction).
std::set<std::string> expansion_outputs(LazyExpansion& e, const InputWord& u);

bool expansion_accepts(LazyExpansion& e, const InputWord& u);

/// Explicit FST for the expansion, or nullopt when it would exceed
/// `max_states`. Expansion states are named "state|g1.g2...".
std::optional<Fst> materialize(LazyExpansion& e, std::size_t max_states);

}  // namespace vpt
