#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "vpt/machines.hpp"
#include "vpt/verdicts.hpp"

namespace vpt {

/// Pending outputs of two synchronized runs, reduced by removing the
/// longest common prefix. Unless a mismatch occurred, at most one side is
/// nonempty. After a mismatch both sides hold the run outputs up to and
/// including the first differing position (one character each, the common
/// prefix being already removed).
struct DelayPair {
    std::string left;
    std::string right;
    bool mismatched = false;

    bool empty() const { return !mismatched && left.empty() && right.empty(); }
    std::size_t size() const { return left.size() + right.size(); }

    bool operator==(const DelayPair&) const = default;

    /// Delay after both runs emit one more output word.
    DelayPair extend(const std::string& out_left, const std::string& out_right) const;
};

/// Outcome of the generic delay-uniqueness search (see delay_search).
struct DelaySearchResult {
    Verdict verdict = Verdict::Inconclusive;
    /// For NonFunctional: inputs to test, at least one of which is accepted
    /// with two distinct outputs.
    std::vector<InputWord> candidates;
    std::uint64_t nodes = 0;
};

/// Synchronized pair product of an FST with itself, trimmed to pairs that
/// are reachable from an initial pair and can reach an accepting pair.
class FstSquare {
public:
    struct Trans {
        InputSymbol in;
        std::uint32_t out1;  // index into the base FST's transitions
        std::uint32_t out2;
        std::uint32_t dst;   // trimmed pair id
    };

    explicit FstSquare(const Fst& f);

    const std::vector<std::pair<StateId, StateId>>& pairs() const { return pairs_; }
    std::size_t num_pairs() const { return pairs_.size(); }

    // delay_search space interface
    using Node = std::uint64_t;
    std::vector<Node> initials() const { return initials_; }
    bool accepting(Node n) const { return accepting_[n]; }
    bool coaccessible(Node) const { return true; }  // trimmed
    std::size_t max_out_len() const { return max_out_len_; }
    InputWord completion(Node n) const;

    template <typename F>
    void successors(Node n, F&& fn) const {
        for (const Trans& t : trans_[n])
            fn(t.in, base_->trans[t.out1].out, base_->trans[t.out2].out,
               static_cast<Node>(t.dst));
    }

private:
    const Fst* base_;
    std::vector<std::pair<StateId, StateId>> pairs_;
    std::vector<std::vector<Trans>> trans_;  // grouped by source pair
    std::vector<Node> initials_;
    std::vector<bool> accepting_;
    std::vector<std::uint32_t> comp_next_;  // transition index toward acceptance
    std::size_t max_out_len_ = 1;
};

/// Breadth-first delay-uniqueness search over a synchronized pair space.
///
/// Non-functionality fires when (a) a mismatched delay reaches a
/// co-accessible pair, (b) an accepting pair is reached with a nonempty
/// delay, (c) a co-accessible pair is reached with two distinct delays, or
/// the delay outgrows (visited pairs + 1) * max output length. The space
/// provides successor enumeration, acceptance, co-accessibility and
/// shortest completion words; witnesses are the returned candidate inputs.
template <typename Space>
DelaySearchResult delay_search(Space& space, std::uint64_t node_budget) {
    struct Rec {
        typename Space::Node node;
        DelayPair delay;
        std::int64_t parent;
        InputSymbol in;
    };

    std::vector<Rec> recs;
    std::deque<std::size_t> queue;
    std::unordered_map<std::uint64_t, std::size_t> seen;  // node -> rec index

    // input word along the breadth-first tree; roots carry no symbol
    auto path_to = [&recs](std::int64_t i) {
        InputWord w;
        while (i >= 0 && recs[i].parent >= 0) {
            w.push_back(recs[i].in);
            i = recs[i].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    DelaySearchResult result;
    for (auto n : space.initials()) {
        if (!space.coaccessible(n)) continue;
        if (seen.count(n)) continue;
        seen.emplace(n, recs.size());
        queue.push_back(recs.size());
        recs.push_back({n, DelayPair{}, -1, InputSymbol{}});
    }

    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (++result.nodes > node_budget) {
            result.verdict = Verdict::Inconclusive;
            return result;
        }

        bool done = false;
        auto cur_node = recs[cur].node;
        space.successors(cur_node, [&](InputSymbol in, const std::string& o1,
                                       const std::string& o2, typename Space::Node dst) {
            if (done || !space.coaccessible(dst)) return;
            DelayPair d = recs[cur].delay.extend(o1, o2);

            auto witness_input = [&](std::int64_t via_parent) {
                InputWord u = path_to(via_parent);
                u.push_back(in);
                return u;
            };

            if (d.mismatched) {  // (a): outputs already differ at a position
                InputWord u = witness_input(cur);
                InputWord rest = space.completion(dst);
                u.insert(u.end(), rest.begin(), rest.end());
                result.verdict = Verdict::NonFunctional;
                result.candidates = {u};
                done = true;
                return;
            }
            if (space.accepting(dst) && !d.empty()) {  // (b): strict prefix divergence
                result.verdict = Verdict::NonFunctional;
                result.candidates = {witness_input(cur)};
                done = true;
                return;
            }
            if (d.size() > (seen.size() + 1) * space.max_out_len()) {
                // delay pumping bound: two runs drifting apart for good
                InputWord u = witness_input(cur);
                InputWord rest = space.completion(dst);
                u.insert(u.end(), rest.begin(), rest.end());
                result.verdict = Verdict::NonFunctional;
                result.candidates = {u};
                done = true;
                return;
            }

            auto it = seen.find(dst);
            if (it == seen.end()) {
                seen.emplace(dst, recs.size());
                queue.push_back(recs.size());
                recs.push_back({dst, std::move(d), static_cast<std::int64_t>(cur), in});
                return;
            }
            const Rec& old = recs[it->second];
            if (old.delay == d) return;

            // (c): same pair, two distinct delays
            InputWord rest = space.completion(dst);
            InputWord u1 = path_to(static_cast<std::int64_t>(it->second));
            u1.insert(u1.end(), rest.begin(), rest.end());
            InputWord u2 = witness_input(cur);
            u2.insert(u2.end(), rest.begin(), rest.end());
            result.verdict = Verdict::NonFunctional;
            result.candidates = {u1, u2};
            done = true;
        });
        if (done) return result;
    }

    result.verdict = Verdict::Functional;
    return result;
}

/// Exact functionality decision for an FST via delay uniqueness on the
/// trimmed square.
FunctionalityVerdict fst_functional(const Fst& f);

/// Brute-force functionality check over all inputs of length <= max_len.
/// Exact when max_len >= 3 * |states|^2 (shortest witnesses are no longer
/// than that); otherwise only non-functional verdicts are conclusive.
FunctionalityVerdict fst_functional_bounded(const Fst& f, std::size_t max_len);

/// Endmarker reduction: appends a fresh return symbol read exactly once
/// before the (single, fresh) accepting state. Turns strict-prefix output
/// divergence into positionwise mismatch while preserving functionality.
Fst add_end_marker(const Fst& f);

}  // namespace vpt
