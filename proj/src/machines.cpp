#include "vpt/machines.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vpt {

namespace {

bool token_ok(const std::string& tok) {
    if (tok.empty()) return false;
    for (char c : tok)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    return true;
}

void check_alphabet(const StructuredAlphabet& a, ValidationReport& report) {
    for (const std::string& c : a.calls.names())
        if (!token_ok(c)) report.violations.push_back("call symbol '" + c + "' is not a valid token");
    for (const std::string& r : a.returns.names())
        if (!token_ok(r)) report.violations.push_back("return symbol '" + r + "' is not a valid token");
    for (const std::string& c : a.calls.names())
        if (a.returns.contains(c))
            report.violations.push_back("symbol '" + c + "' declared both call and return");
}

void check_state_set(const Interner& states, const std::vector<StateId>& set,
                     const char* what, ValidationReport& report) {
    for (StateId q : set)
        if (q >= states.size())
            report.violations.push_back(std::string(what) + " state id " + std::to_string(q) +
                                        " is not a declared state");
}

}  // namespace

ValidationReport validate(const Vpt& m) {
    ValidationReport report;
    check_alphabet(m.alphabet, report);
    check_state_set(m.states, m.initial, "initial", report);
    check_state_set(m.states, m.final, "final", report);
    for (std::size_t i = 0; i < m.call_trans.size(); ++i) {
        const auto& t = m.call_trans[i];
        std::string where = "call transition #" + std::to_string(i);
        if (t.src >= m.states.size()) report.violations.push_back(where + ": source state undeclared");
        if (t.dst >= m.states.size()) report.violations.push_back(where + ": target state undeclared");
        if (t.call >= m.alphabet.calls.size()) report.violations.push_back(where + ": call symbol undeclared");
        if (t.push >= m.stack_syms.size()) report.violations.push_back(where + ": stack symbol undeclared");
        if (!m.alphabet.output_word_ok(t.out))
            report.violations.push_back(where + ": output '" + t.out + "' uses undeclared output symbols");
    }
    for (std::size_t i = 0; i < m.ret_trans.size(); ++i) {
        const auto& t = m.ret_trans[i];
        std::string where = "return transition #" + std::to_string(i);
        if (t.src >= m.states.size()) report.violations.push_back(where + ": source state undeclared");
        if (t.dst >= m.states.size()) report.violations.push_back(where + ": target state undeclared");
        if (t.ret >= m.alphabet.returns.size()) report.violations.push_back(where + ": return symbol undeclared");
        if (t.pop >= m.stack_syms.size()) report.violations.push_back(where + ": stack symbol undeclared");
        if (!m.alphabet.output_word_ok(t.out))
            report.violations.push_back(where + ": output '" + t.out + "' uses undeclared output symbols");
    }
    return report;
}

ValidationReport validate(const Vpa& m) {
    return validate(vpt_of(m));
}

ValidationReport validate(const Fst& m) {
    ValidationReport report;
    check_alphabet(m.alphabet, report);
    check_state_set(m.states, m.initial, "initial", report);
    check_state_set(m.states, m.final, "final", report);
    for (std::size_t i = 0; i < m.trans.size(); ++i) {
        const auto& t = m.trans[i];
        std::string where = "transition #" + std::to_string(i);
        if (t.src >= m.states.size()) report.violations.push_back(where + ": source state undeclared");
        if (t.dst >= m.states.size()) report.violations.push_back(where + ": target state undeclared");
        std::size_t bound = t.in.is_call ? m.alphabet.calls.size() : m.alphabet.returns.size();
        if (t.in.id >= bound) report.violations.push_back(where + ": input symbol undeclared");
        if (!m.alphabet.output_word_ok(t.out))
            report.violations.push_back(where + ": output '" + t.out + "' uses undeclared output symbols");
    }
    return report;
}

Vpa vpa_of(const Vpt& m) {
    Vpa a;
    a.alphabet = m.alphabet;
    a.states = m.states;
    a.stack_syms = m.stack_syms;
    a.initial = m.initial;
    a.final = m.final;
    a.call_trans.reserve(m.call_trans.size());
    for (const auto& t : m.call_trans) a.call_trans.push_back({t.src, t.call, t.push, t.dst});
    a.ret_trans.reserve(m.ret_trans.size());
    for (const auto& t : m.ret_trans) a.ret_trans.push_back({t.src, t.ret, t.pop, t.dst});
    return a;
}

Vpt vpt_of(const Vpa& m) {
    Vpt t;
    t.alphabet = m.alphabet;
    t.states = m.states;
    t.stack_syms = m.stack_syms;
    t.initial = m.initial;
    t.final = m.final;
    t.call_trans.reserve(m.call_trans.size());
    for (const auto& c : m.call_trans) t.call_trans.push_back({c.src, c.call, "", c.push, c.dst});
    t.ret_trans.reserve(m.ret_trans.size());
    for (const auto& r : m.ret_trans) t.ret_trans.push_back({r.src, r.ret, "", r.pop, r.dst});
    return t;
}

Vpt disjoint_union(const Vpt& a, const Vpt& b) {
    if (!(a.alphabet.calls == b.alphabet.calls) || !(a.alphabet.returns == b.alphabet.returns))
        throw std::invalid_argument("disjoint_union: machines use different input alphabets");

    Vpt u;
    u.alphabet = a.alphabet;
    for (char c : b.alphabet.outputs) u.alphabet.add_output(c);

    auto map_states = [&u](const Vpt& m, const std::string& prefix) {
        std::vector<StateId> ids(m.states.size());
        for (SymbolId q = 0; q < m.states.size(); ++q)
            ids[q] = u.states.add(prefix + m.states.name(q));
        return ids;
    };
    auto map_stack = [&u](const Vpt& m, const std::string& prefix) {
        std::vector<StackId> ids(m.stack_syms.size());
        for (SymbolId g = 0; g < m.stack_syms.size(); ++g)
            ids[g] = u.stack_syms.add(prefix + m.stack_syms.name(g));
        return ids;
    };

    std::vector<StateId> qa = map_states(a, "L."), qb = map_states(b, "R.");
    std::vector<StackId> ga = map_stack(a, "L."), gb = map_stack(b, "R.");

    std::set<StateId> init, fin;
    for (StateId q : a.initial) init.insert(qa[q]);
    for (StateId q : b.initial) init.insert(qb[q]);
    for (StateId q : a.final) fin.insert(qa[q]);
    for (StateId q : b.final) fin.insert(qb[q]);
    u.initial.assign(init.begin(), init.end());
    u.final.assign(fin.begin(), fin.end());

    for (const auto& t : a.call_trans) u.call_trans.push_back({qa[t.src], t.call, t.out, ga[t.push], qa[t.dst]});
    for (const auto& t : b.call_trans) u.call_trans.push_back({qb[t.src], t.call, t.out, gb[t.push], qb[t.dst]});
    for (const auto& t : a.ret_trans) u.ret_trans.push_back({qa[t.src], t.ret, t.out, ga[t.pop], qa[t.dst]});
    for (const auto& t : b.ret_trans) u.ret_trans.push_back({qb[t.src], t.ret, t.out, gb[t.pop], qb[t.dst]});
    return u;
}

Vpt remap_inputs(const Vpt& m, const StructuredAlphabet& target) {
    if (m.alphabet.calls.size() != target.calls.size() ||
        m.alphabet.returns.size() != target.returns.size())
        throw std::invalid_argument("remap_inputs: alphabets declare different symbol sets");

    auto build_map = [](const Interner& from, const Interner& to) {
        std::vector<SymbolId> map(from.size());
        for (SymbolId i = 0; i < from.size(); ++i) {
            auto id = to.find(from.name(i));
            if (!id)
                throw std::invalid_argument("remap_inputs: symbol '" + from.name(i) +
                                            "' missing from the target alphabet");
            map[i] = *id;
        }
        return map;
    };
    std::vector<SymbolId> call_map = build_map(m.alphabet.calls, target.calls);
    std::vector<SymbolId> ret_map = build_map(m.alphabet.returns, target.returns);

    Vpt r = m;
    r.alphabet = target;
    for (char c : m.alphabet.outputs) r.alphabet.add_output(c);
    for (auto& t : r.call_trans) t.call = call_map[t.call];
    for (auto& t : r.ret_trans) t.ret = ret_map[t.ret];
    return r;
}

std::vector<std::string> fst_outputs(const Fst& m, const InputWord& u) {
    // (state, accumulated output), deduplicated per step
    std::set<std::pair<StateId, std::string>> frontier;
    for (StateId q : m.initial) frontier.insert({q, ""});
    for (const InputSymbol& a : u) {
        std::set<std::pair<StateId, std::string>> next;
        for (const auto& [q, out] : frontier)
            for (const FstTrans& t : m.trans)
                if (t.src == q && t.in == a) next.insert({t.dst, out + t.out});
        frontier.swap(next);
        if (frontier.empty()) break;
    }
    std::set<std::string> outs;
    for (const auto& [q, out] : frontier)
        if (m.is_final(q)) outs.insert(out);
    return {outs.begin(), outs.end()};
}

bool fst_accepts(const Fst& m, const InputWord& u) {
    std::set<StateId> frontier(m.initial.begin(), m.initial.end());
    for (const InputSymbol& a : u) {
        std::set<StateId> next;
        for (StateId q : frontier)
            for (const FstTrans& t : m.trans)
                if (t.src == q && t.in == a) next.insert(t.dst);
        frontier.swap(next);
        if (frontier.empty()) return false;
    }
    for (StateId q : frontier)
        if (m.is_final(q)) return true;
    return false;
}

}  // namespace vpt
