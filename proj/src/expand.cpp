#include "vpt/expand.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace vpt {

LazyExpansion::LazyExpansion(const Vpt& t, std::size_t cap) : base_(&t), cap_(cap) {
    if (cap == 0) throw std::invalid_argument("LazyExpansion: height cap must be at least 1");
    stack_nodes_.push_back({UINT32_MAX, 0, 0});  // bottom sentinel
    calls_from_.resize(t.num_states());
    rets_from_.resize(t.num_states());
    for (std::uint32_t i = 0; i < t.call_trans.size(); ++i)
        calls_from_[t.call_trans[i].src].push_back(i);
    for (std::uint32_t i = 0; i < t.ret_trans.size(); ++i)
        rets_from_[t.ret_trans[i].src].push_back(i);
}

std::uint32_t LazyExpansion::push(std::uint32_t stack, StackId sym) {
    std::uint64_t key = (static_cast<std::uint64_t>(stack) << 16) | sym;
    auto [it, fresh] = stack_index_.emplace(key, static_cast<std::uint32_t>(stack_nodes_.size()));
    if (fresh) stack_nodes_.push_back({stack, sym, stack_nodes_[stack].depth + 1});
    return it->second;
}

LazyExpansion::Node LazyExpansion::make_node(StateId q, std::uint32_t stack) {
    std::uint64_t key = (static_cast<std::uint64_t>(stack) << 20) | q;
    auto [it, fresh] = node_index_.emplace(key, nodes_.size());
    if (fresh) nodes_.push_back({q, stack});
    return it->second;
}

std::vector<LazyExpansion::Node> LazyExpansion::initials() {
    std::vector<Node> res;
    for (StateId q : base_->initial) res.push_back(make_node(q, 0));
    return res;
}

bool LazyExpansion::accepting(Node n) const {
    return nodes_[n].stack == 0 && base_->is_final(nodes_[n].state);
}

std::vector<StackId> LazyExpansion::node_stack_syms(Node n) const {
    std::vector<StackId> syms;
    for (std::uint32_t s = nodes_[n].stack; s != 0; s = stack_nodes_[s].parent)
        syms.push_back(stack_nodes_[s].sym);
    std::reverse(syms.begin(), syms.end());
    return syms;
}

std::set<std::string> expansion_outputs(LazyExpansion& e, const InputWord& u) {
    std::map<LazyExpansion::Node, std::set<std::string>> frontier;
    for (auto n : e.initials()) frontier[n].insert("");
    for (const InputSymbol& a : u) {
        std::map<LazyExpansion::Node, std::set<std::string>> next;
        for (const auto& [node, outs] : frontier) {
            e.successors(node, [&](InputSymbol in, const std::string& out,
                                   LazyExpansion::Node dst) {
                if (!(in == a)) return;
                auto& bucket = next[dst];
                for (const std::string& o : outs) bucket.insert(o + out);
            });
        }
        frontier.swap(next);
        if (frontier.empty()) break;
    }
    std::set<std::string> result;
    for (const auto& [node, outs] : frontier)
        if (e.accepting(node)) result.insert(outs.begin(), outs.end());
    return result;
}

bool expansion_accepts(LazyExpansion& e, const InputWord& u) {
    std::set<LazyExpansion::Node> frontier;
    for (auto n : e.initials()) frontier.insert(n);
    for (const InputSymbol& a : u) {
        std::set<LazyExpansion::Node> next;
        for (auto node : frontier)
            e.successors(node, [&](InputSymbol in, const std::string&, LazyExpansion::Node dst) {
                if (in == a) next.insert(dst);
            });
        frontier.swap(next);
        if (frontier.empty()) return false;
    }
    return std::any_of(frontier.begin(), frontier.end(),
                       [&e](LazyExpansion::Node n) { return e.accepting(n); });
}

std::optional<Fst> materialize(LazyExpansion& e, std::size_t max_states) {
    const Vpt& base = e.base();
    Fst f;
    f.alphabet = base.alphabet;

    auto node_name = [&](LazyExpansion::Node n) {
        std::string name = base.states.name(e.node_state(n)) + "|";
        bool first = true;
        for (StackId g : e.node_stack_syms(n)) {
            if (!first) name += '.';
            name += base.stack_syms.name(g);
            first = false;
        }
        return name;
    };

    std::map<LazyExpansion::Node, StateId> ids;
    std::queue<LazyExpansion::Node> work;
    auto intern = [&](LazyExpansion::Node n) {
        auto it = ids.find(n);
        if (it != ids.end()) return it->second;
        std::string name = node_name(n);
        while (f.states.contains(name)) name += "'";  // separator chars may occur in names
        StateId id = f.states.add(name);
        ids.emplace(n, id);
        work.push(n);
        return id;
    };

    for (auto n : e.initials()) f.initial.push_back(intern(n));
    std::sort(f.initial.begin(), f.initial.end());

    while (!work.empty()) {
        auto n = work.front();
        work.pop();
        if (ids.size() > max_states) return std::nullopt;
        StateId src = ids.at(n);
        e.successors(n, [&](InputSymbol in, const std::string& out, LazyExpansion::Node dst) {
            f.trans.push_back({src, in, out, intern(dst)});
        });
    }
    if (ids.size() > max_states) return std::nullopt;

    for (const auto& [node, id] : ids)
        if (e.accepting(node)) f.final.push_back(id);
    std::sort(f.final.begin(), f.final.end());
    return f;
}

}  // namespace vpt
