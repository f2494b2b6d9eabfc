#include "vpt/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "vpt/semantics.hpp"

namespace vpt {

namespace {

std::vector<InputSymbol> input_symbols(const StructuredAlphabet& a) {
    std::vector<InputSymbol> syms;
    for (SymbolId c = 0; c < a.calls.size(); ++c) syms.push_back(call_sym(c));
    for (SymbolId r = 0; r < a.returns.size(); ++r) syms.push_back(ret_sym(r));
    return syms;
}

// depth-first scan of domain words of exactly target length, with
// configuration-set pruning
void scan(const Vpt& m, const std::vector<InputSymbol>& syms, InputWord& word,
          std::vector<std::set<Configuration>>& frontiers, std::size_t target,
          std::deque<InputWord>& out) {
    // by value: the recursion below may reallocate `frontiers`
    const std::set<Configuration> configs = frontiers.back();
    if (word.size() == target) {
        for (const Configuration& c : configs)
            if (c.stack.empty() && m.is_final(c.state)) {
                out.push_back(word);
                break;
            }
        return;
    }
    std::size_t remaining = target - word.size() - 1;
    for (const InputSymbol& a : syms) {
        std::set<Configuration> next;
        for (const Configuration& c : configs)
            for (auto& [succ, o] : step(m, c, a)) {
                (void)o;
                if (succ.stack.size() <= remaining) next.insert(std::move(succ));
            }
        if (next.empty()) continue;
        word.push_back(a);
        frontiers.push_back(std::move(next));
        scan(m, syms, word, frontiers, target, out);
        frontiers.pop_back();
        word.pop_back();
    }
}

void scan_naive(const Vpt& m, const std::vector<InputSymbol>& syms, InputWord& word,
                std::size_t target, std::deque<InputWord>& out) {
    if (word.size() == target) {
        if (accepts(m, word)) out.push_back(word);
        return;
    }
    for (const InputSymbol& a : syms) {
        word.push_back(a);
        scan_naive(m, syms, word, target, out);
        word.pop_back();
    }
}

}  // namespace

DomainEnumerator::DomainEnumerator(const Vpt& t, std::size_t max_len, bool naive)
    : machine_(&t), max_len_(max_len), naive_(naive) {}

void DomainEnumerator::fill_layer() {
    std::vector<InputSymbol> syms = input_symbols(machine_->alphabet);
    while (buffer_.empty() && !exhausted_) {
        if (current_len_ > max_len_) {
            exhausted_ = true;
            break;
        }
        InputWord word;
        if (naive_) {
            scan_naive(*machine_, syms, word, current_len_, buffer_);
        } else {
            std::vector<std::set<Configuration>> frontiers(1);
            for (StateId q : machine_->initial) frontiers[0].insert({q, {}});
            scan(*machine_, syms, word, frontiers, current_len_, buffer_);
        }
        ++current_len_;
    }
}

std::optional<InputWord> DomainEnumerator::next() {
    if (buffer_.empty()) fill_layer();
    if (buffer_.empty()) return std::nullopt;
    InputWord w = std::move(buffer_.front());
    buffer_.pop_front();
    return w;
}

std::vector<InputWord> enumerate_domain(const Vpt& t, std::size_t max_len, bool naive) {
    std::vector<InputWord> words;
    DomainEnumerator it(t, max_len, naive);
    while (auto w = it.next()) words.push_back(std::move(*w));
    return words;
}

OracleReport brute_functional(const Vpt& t, std::size_t max_len, const OracleOptions& opts) {
    OracleReport report;
    report.max_len = max_len;
    DomainEnumerator it(t, max_len, opts.naive);
    while (auto w = it.next()) {
        ++report.checked_count;
        std::set<std::string> outs = transduce(t, *w, opts.max_outputs_per_word);
        if (outs.size() >= 2) {
            auto o = outs.begin();
            std::string o1 = *o++;
            report.verdict = OracleVerdict::NonFunctional;
            report.witness = Witness{*w, o1, *o};
            return report;
        }
    }
    report.verdict = OracleVerdict::Functional;
    return report;
}

OracleReport brute_equiv(const Vpt& t1, const Vpt& t2, std::size_t max_len,
                         const OracleOptions& opts) {
    if (!(t1.alphabet.calls == t2.alphabet.calls) ||
        !(t1.alphabet.returns == t2.alphabet.returns))
        throw std::invalid_argument("brute_equiv: machines use different input alphabets");

    OracleReport report;
    report.max_len = max_len;
    Vpt both = disjoint_union(t1, t2);
    DomainEnumerator it(both, max_len, opts.naive);
    while (auto w = it.next()) {
        ++report.checked_count;
        bool in1 = accepts(t1, *w), in2 = accepts(t2, *w);
        if (in1 != in2) {
            report.verdict = OracleVerdict::Differ;
            report.domain_witness = *w;
            return report;
        }
        std::set<std::string> s1 = transduce(t1, *w, opts.max_outputs_per_word);
        std::set<std::string> s2 = transduce(t2, *w, opts.max_outputs_per_word);
        if (s1 != s2) {
            std::string v1, v2;
            bool found = false;
            for (const std::string& x : s1)
                if (!s2.count(x)) {
                    v1 = x;
                    v2 = *s2.begin();
                    found = true;
                    break;
                }
            if (!found)
                for (const std::string& y : s2)
                    if (!s1.count(y)) {
                        v2 = y;
                        v1 = *s1.begin();
                        break;
                    }
            report.verdict = OracleVerdict::Differ;
            report.witness = Witness{*w, v1, v2};
            return report;
        }
    }
    report.verdict = OracleVerdict::EquivUpTo;
    return report;
}

}  // namespace vpt
