#include "vpt/semantics.hpp"

#include <algorithm>
#include <map>

#include "vpt/summaries.hpp"

namespace vpt {

std::vector<std::pair<Configuration, std::string>> step(const Vpt& m, const Configuration& c,
                                                        InputSymbol a) {
    std::size_t bound = a.is_call ? m.alphabet.calls.size() : m.alphabet.returns.size();
    if (a.id >= bound) throw std::invalid_argument("step: symbol outside the machine's alphabet");

    std::vector<std::pair<Configuration, std::string>> out;
    auto push_unique = [&out](Configuration cfg, std::string word) {
        for (const auto& [c0, w0] : out)
            if (c0 == cfg && w0 == word) return;
        out.emplace_back(std::move(cfg), std::move(word));
    };

    if (a.is_call) {
        for (const VptCallTrans& t : m.call_trans) {
            if (t.src != c.state || t.call != a.id) continue;
            Configuration next{t.dst, c.stack};
            next.stack.push_back(t.push);
            push_unique(std::move(next), t.out);
        }
    } else {
        if (c.stack.empty()) return out;  // returns always pop
        for (const VptRetTrans& t : m.ret_trans) {
            if (t.src != c.state || t.ret != a.id || t.pop != c.stack.back()) continue;
            Configuration next{t.dst, c.stack};
            next.stack.pop_back();
            push_unique(std::move(next), t.out);
        }
    }
    return out;
}

std::set<std::string> transduce(const Vpt& m, const InputWord& u, std::size_t max_items) {
    // frontier: configuration -> set of produced outputs so far
    std::map<Configuration, std::set<std::string>> frontier;
    for (StateId q : m.initial) frontier[{q, {}}].insert("");

    std::size_t remaining = u.size();
    for (const InputSymbol& a : u) {
        std::map<Configuration, std::set<std::string>> next;
        std::size_t items = 0;
        --remaining;
        for (const auto& [cfg, outs] : frontier) {
            for (const auto& [succ, word] : step(m, cfg, a)) {
                if (succ.stack.size() > remaining) continue;  // cannot empty in time
                auto& bucket = next[succ];
                for (const std::string& o : outs) {
                    bucket.insert(o + word);
                    if (++items > max_items)
                        throw ResourceLimitError("transduce: output set budget exceeded");
                }
            }
        }
        frontier.swap(next);
        if (frontier.empty()) break;
    }

    std::set<std::string> result;
    for (const auto& [cfg, outs] : frontier)
        if (cfg.stack.empty() && m.is_final(cfg.state)) result.insert(outs.begin(), outs.end());
    return result;
}

bool produces(const Vpt& m, const InputWord& u, const std::string& v) {
    // configurations extended with the length of v matched so far
    std::set<std::pair<Configuration, std::size_t>> frontier;
    for (StateId q : m.initial) frontier.insert({{q, {}}, 0});

    for (const InputSymbol& a : u) {
        std::set<std::pair<Configuration, std::size_t>> next;
        for (const auto& [cfg, matched] : frontier) {
            for (const auto& [succ, word] : step(m, cfg, a)) {
                if (matched + word.size() > v.size()) continue;
                if (v.compare(matched, word.size(), word) != 0) continue;
                next.insert({succ, matched + word.size()});
            }
        }
        frontier.swap(next);
        if (frontier.empty()) return false;
    }
    for (const auto& [cfg, matched] : frontier)
        if (cfg.stack.empty() && m.is_final(cfg.state) && matched == v.size()) return true;
    return false;
}

bool accepts(const Vpt& m, const InputWord& u) {
    std::set<Configuration> frontier;
    for (StateId q : m.initial) frontier.insert({q, {}});
    std::size_t remaining = u.size();
    for (const InputSymbol& a : u) {
        std::set<Configuration> next;
        --remaining;
        for (const Configuration& cfg : frontier)
            for (auto& [succ, word] : step(m, cfg, a)) {
                (void)word;
                if (succ.stack.size() <= remaining) next.insert(succ);
            }
        frontier.swap(next);
        if (frontier.empty()) return false;
    }
    for (const Configuration& cfg : frontier)
        if (cfg.stack.empty() && m.is_final(cfg.state)) return true;
    return false;
}

bool accepts(const Vpa& m, const InputWord& u) { return accepts(vpt_of(m), u); }

namespace {

void run_dfs(const Vpt& m, const InputWord& u, std::size_t pos, RunTrace& trace, bool& stop,
             const std::function<bool(const RunTrace&)>& cb) {
    if (stop) return;
    // by value: the recursion below may reallocate trace.configs
    const Configuration cfg = trace.configs.back();
    if (pos == u.size()) {
        if (cfg.stack.empty() && m.is_final(cfg.state)) {
            if (!cb(trace)) stop = true;
        }
        return;
    }
    if (cfg.stack.size() > u.size() - pos) return;  // cannot empty in time

    const InputSymbol a = u[pos];
    if (a.is_call) {
        for (std::uint32_t i = 0; i < m.call_trans.size() && !stop; ++i) {
            const VptCallTrans& t = m.call_trans[i];
            if (t.src != cfg.state || t.call != a.id) continue;
            Configuration next{t.dst, cfg.stack};
            next.stack.push_back(t.push);
            trace.configs.push_back(std::move(next));
            trace.step_outputs.push_back(t.out);
            trace.steps.push_back({true, i});
            run_dfs(m, u, pos + 1, trace, stop, cb);
            trace.configs.pop_back();
            trace.step_outputs.pop_back();
            trace.steps.pop_back();
        }
    } else {
        if (cfg.stack.empty()) return;
        for (std::uint32_t i = 0; i < m.ret_trans.size() && !stop; ++i) {
            const VptRetTrans& t = m.ret_trans[i];
            if (t.src != cfg.state || t.ret != a.id || t.pop != cfg.stack.back()) continue;
            Configuration next{t.dst, cfg.stack};
            next.stack.pop_back();
            trace.configs.push_back(std::move(next));
            trace.step_outputs.push_back(t.out);
            trace.steps.push_back({false, i});
            run_dfs(m, u, pos + 1, trace, stop, cb);
            trace.configs.pop_back();
            trace.step_outputs.pop_back();
            trace.steps.pop_back();
        }
    }
}

}  // namespace

void for_each_accepting_run(const Vpt& m, const InputWord& u,
                            const std::function<bool(const RunTrace&)>& cb) {
    bool stop = false;
    for (StateId q : m.initial) {
        if (stop) break;
        RunTrace trace;
        trace.configs.push_back({q, {}});
        run_dfs(m, u, 0, trace, stop, cb);
    }
}

std::vector<RunTrace> accepting_runs(const Vpt& m, const InputWord& u, std::size_t limit) {
    std::vector<RunTrace> runs;
    if (limit == 0) return runs;
    for_each_accepting_run(m, u, [&](const RunTrace& t) {
        runs.push_back(t);
        return runs.size() < limit;
    });
    return runs;
}

bool is_accepting_run(const Vpt& m, const InputWord& u, const RunTrace& trace) {
    if (trace.configs.size() != u.size() + 1) return false;
    if (trace.step_outputs.size() != u.size() || trace.steps.size() != u.size()) return false;
    const Configuration& first = trace.configs.front();
    const Configuration& last = trace.configs.back();
    if (!m.is_initial(first.state) || !first.stack.empty()) return false;
    if (!m.is_final(last.state) || !last.stack.empty()) return false;

    for (std::size_t i = 0; i < u.size(); ++i) {
        const Configuration& cur = trace.configs[i];
        const Configuration& nxt = trace.configs[i + 1];
        const StepRef ref = trace.steps[i];
        if (u[i].is_call != ref.is_call) return false;
        if (ref.is_call) {
            if (ref.index >= m.call_trans.size()) return false;
            const VptCallTrans& t = m.call_trans[ref.index];
            if (t.src != cur.state || t.call != u[i].id || t.dst != nxt.state) return false;
            if (t.out != trace.step_outputs[i]) return false;
            if (nxt.stack.size() != cur.stack.size() + 1 || nxt.stack.back() != t.push) return false;
            if (!std::equal(cur.stack.begin(), cur.stack.end(), nxt.stack.begin())) return false;
        } else {
            if (ref.index >= m.ret_trans.size()) return false;
            const VptRetTrans& t = m.ret_trans[ref.index];
            if (t.src != cur.state || t.ret != u[i].id || t.dst != nxt.state) return false;
            if (t.out != trace.step_outputs[i]) return false;
            if (cur.stack.empty() || cur.stack.back() != t.pop) return false;
            if (nxt.stack.size() + 1 != cur.stack.size()) return false;
            if (!std::equal(nxt.stack.begin(), nxt.stack.end(), cur.stack.begin())) return false;
        }
    }
    return true;
}

namespace {

std::optional<InputWord> shortest_domain_word(const VpaView& view, const std::vector<StateId>& initial,
                                              const std::vector<StateId>& final_states) {
    WellNestedSummaries summaries(view);
    std::uint64_t best = WellNestedSummaries::kInf;
    StateId best_i = 0, best_f = 0;
    for (StateId i : initial)
        for (StateId f : final_states)
            if (summaries.dist(i, f) < best) {
                best = summaries.dist(i, f);
                best_i = i;
                best_f = f;
            }
    if (best == WellNestedSummaries::kInf) return std::nullopt;
    InputWord w;
    for (auto [is_call, sym] : summaries.witness(best_i, best_f)) w.push_back({is_call, sym});
    return w;
}

}  // namespace

std::optional<InputWord> domain_nonempty(const Vpt& m) {
    return shortest_domain_word(view_of(m), m.initial, m.final);
}

std::optional<InputWord> domain_nonempty(const Vpa& m) {
    return shortest_domain_word(view_of(m), m.initial, m.final);
}

}  // namespace vpt
