#include "vpt/summaries.hpp"

#include <queue>
#include <stdexcept>
#include <tuple>

namespace vpt {

VpaView view_of(const Vpa& m) {
    VpaView v;
    v.num_states = static_cast<std::uint32_t>(m.states.size());
    v.num_stack = static_cast<std::uint32_t>(m.stack_syms.size());
    for (const auto& t : m.call_trans) v.calls.push_back({t.src, t.call, t.push, t.dst});
    for (const auto& t : m.ret_trans) v.rets.push_back({t.src, t.ret, t.pop, t.dst});
    return v;
}

VpaView view_of(const Vpt& m) {
    VpaView v;
    v.num_states = static_cast<std::uint32_t>(m.states.size());
    v.num_stack = static_cast<std::uint32_t>(m.stack_syms.size());
    for (const auto& t : m.call_trans) v.calls.push_back({t.src, t.call, t.push, t.dst});
    for (const auto& t : m.ret_trans) v.rets.push_back({t.src, t.ret, t.pop, t.dst});
    return v;
}

VpaView square_view(const VpaView& v) {
    VpaView s;
    s.num_states = v.num_states * v.num_states;
    s.num_stack = v.num_stack * v.num_stack;
    auto st = [&v](StateId a, StateId b) { return a * v.num_states + b; };
    auto gm = [&v](StackId a, StackId b) { return a * v.num_stack + b; };
    for (const auto& t1 : v.calls)
        for (const auto& t2 : v.calls)
            if (t1.sym == t2.sym)
                s.calls.push_back({st(t1.src, t2.src), t1.sym, gm(t1.push, t2.push), st(t1.dst, t2.dst)});
    for (const auto& t1 : v.rets)
        for (const auto& t2 : v.rets)
            if (t1.sym == t2.sym)
                s.rets.push_back({st(t1.src, t2.src), t1.sym, gm(t1.pop, t2.pop), st(t1.dst, t2.dst)});
    return s;
}

WellNestedSummaries::WellNestedSummaries(const VpaView& view) : view_(&view), n_(view.num_states) {
    std::size_t total = static_cast<std::size_t>(n_) * n_;
    dist_.assign(total, kInf);
    deriv_.assign(total, Deriv{});

    // transition indexes
    std::vector<std::vector<std::uint32_t>> calls_by_dst(n_);
    std::vector<std::vector<std::uint32_t>> rets_by_src(n_);
    for (std::uint32_t i = 0; i < view.calls.size(); ++i) calls_by_dst[view.calls[i].dst].push_back(i);
    for (std::uint32_t i = 0; i < view.rets.size(); ++i) rets_by_src[view.rets[i].src].push_back(i);

    using Entry = std::pair<std::uint64_t, std::uint32_t>;  // (cost, pair index)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    std::vector<bool> settled(total, false);
    std::vector<std::vector<StateId>> settled_from(n_), settled_to(n_);

    auto relax = [&](std::size_t pair, std::uint64_t cost, Deriv d) {
        if (cost < dist_[pair]) {
            dist_[pair] = cost;
            deriv_[pair] = d;
            pq.push({cost, static_cast<std::uint32_t>(pair)});
        }
    };

    for (StateId p = 0; p < n_; ++p)
        relax(idx(p, p), 0, Deriv{Deriv::Kind::Eps, 0, 0, 0});

    while (!pq.empty()) {
        auto [cost, pair] = pq.top();
        pq.pop();
        if (settled[pair] || cost != dist_[pair]) continue;
        settled[pair] = true;
        StateId p = pair / n_, q = pair % n_;

        // surround: c (p..q) r for every call ending in p and matching return from q
        for (std::uint32_t ci : calls_by_dst[p]) {
            const auto& tc = view.calls[ci];
            for (std::uint32_t ri : rets_by_src[q]) {
                const auto& tr = view.rets[ri];
                if (tr.pop != tc.push) continue;
                relax(idx(tc.src, tr.dst), cost + 2,
                      Deriv{Deriv::Kind::Surround, ci, ri, pair});
            }
        }

        // concat with already settled neighbours
        for (StateId r : settled_from[q])
            relax(idx(p, r), cost + dist_[idx(q, r)],
                  Deriv{Deriv::Kind::Concat, pair, static_cast<std::uint32_t>(idx(q, r)), 0});
        for (StateId o : settled_to[p])
            relax(idx(o, q), dist_[idx(o, p)] + cost,
                  Deriv{Deriv::Kind::Concat, static_cast<std::uint32_t>(idx(o, p)), pair, 0});

        settled_from[p].push_back(q);
        settled_to[q].push_back(p);
    }
}

void WellNestedSummaries::append_witness(std::size_t pair,
                                         std::vector<std::pair<bool, SymbolId>>& out) const {
    const Deriv& d = deriv_[pair];
    switch (d.kind) {
        case Deriv::Kind::Eps:
            return;
        case Deriv::Kind::Surround: {
            out.emplace_back(true, view_->calls[d.a].sym);
            append_witness(d.inner, out);
            out.emplace_back(false, view_->rets[d.b].sym);
            return;
        }
        case Deriv::Kind::Concat:
            append_witness(d.a, out);
            append_witness(d.b, out);
            return;
        case Deriv::Kind::None:
            throw std::logic_error("summary witness requested for unreachable pair");
    }
}

std::vector<std::pair<bool, SymbolId>> WellNestedSummaries::witness(StateId p, StateId q) const {
    if (!reachable(p, q)) throw std::invalid_argument("witness: pair not summarized");
    std::vector<std::pair<bool, SymbolId>> out;
    append_witness(idx(p, q), out);
    return out;
}

}  // namespace vpt
