#include "vpt/textio.hpp"

#include <algorithm>
#include <sstream>

namespace vpt {

namespace {

struct Token {
    std::string text;
    std::size_t col;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;  // comment to end of line
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
        toks.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return toks;
}

enum class Kind { Vpa, Vpt, Fst };

struct Parser {
    std::size_t lineno = 0;
    Kind kind = Kind::Vpt;
    StructuredAlphabet alphabet;
    Interner states;
    Interner stack_syms;
    std::vector<StateId> initial, final_set;
    std::vector<VptCallTrans> call_trans;
    std::vector<VptRetTrans> ret_trans;
    std::vector<FstTrans> fst_trans;
    bool saw_kind = false;

    [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
        throw ParseError(lineno, col, msg);
    }

    void expect_count(const std::vector<Token>& t, std::size_t n, const std::string& shape) {
        if (t.size() != n) fail(t.empty() ? 1 : t.back().col, "expected '" + shape + "'");
    }

    StateId state_ref(const Token& tok) {
        auto id = states.find(tok.text);
        if (!id) fail(tok.col, "undeclared state '" + tok.text + "'");
        return *id;
    }

    StackId stack_ref(const Token& tok) {
        auto id = stack_syms.find(tok.text);
        if (!id) fail(tok.col, "undeclared stack symbol '" + tok.text + "'");
        return *id;
    }

    std::string output_ref(const Token& tok) {
        if (tok.text == "eps") return "";
        for (char c : tok.text)
            if (!alphabet.has_output(c))
                fail(tok.col, std::string("undeclared output symbol '") + c + "'");
        return tok.text;
    }

    void declare_symbols(const std::vector<Token>& toks, std::size_t from, Interner& table,
                         const std::string& what) {
        for (std::size_t i = from; i < toks.size(); ++i) {
            if (table.contains(toks[i].text))
                fail(toks[i].col, "duplicate " + what + " '" + toks[i].text + "'");
            table.add(toks[i].text);
        }
    }

    void handle_alphabet(const std::vector<Token>& t) {
        if (t.size() < 2) fail(1, "expected 'alphabet calls|returns|outputs <symbols>'");
        const std::string& part = t[1].text;
        if (part == "calls") {
            declare_symbols(t, 2, alphabet.calls, "call symbol");
        } else if (part == "returns") {
            declare_symbols(t, 2, alphabet.returns, "return symbol");
        } else if (part == "outputs") {
            for (std::size_t i = 2; i < t.size(); ++i) {
                if (t[i].text.size() != 1)
                    fail(t[i].col, "output symbols are single characters, got '" + t[i].text + "'");
                if (alphabet.has_output(t[i].text[0]))
                    fail(t[i].col, "duplicate output symbol '" + t[i].text + "'");
                alphabet.add_output(t[i].text[0]);
            }
        } else {
            fail(t[1].col, "unknown alphabet section '" + part + "'");
        }
    }

    void handle_state_list(const std::vector<Token>& t, std::vector<StateId>& set) {
        for (std::size_t i = 1; i < t.size(); ++i) {
            StateId q = state_ref(t[i]);
            if (std::find(set.begin(), set.end(), q) != set.end())
                fail(t[i].col, "duplicate state '" + t[i].text + "'");
            set.push_back(q);
        }
    }

    void handle_call(const std::vector<Token>& t) {
        if (kind == Kind::Fst) fail(t[0].col, "'call' lines are not allowed in an fst file");
        // call q c / out push g -> q'   (no "/ out" for vpa)
        bool with_out = kind == Kind::Vpt;
        std::size_t n = with_out ? 9 : 7;
        expect_count(t, n, with_out ? "call <q> <c> / <out|eps> push <g> -> <q'>"
                                    : "call <q> <c> push <g> -> <q'>");
        std::size_t i = 1;
        StateId src = state_ref(t[i++]);
        auto call = alphabet.calls.find(t[i].text);
        if (!call) fail(t[i].col, "undeclared call symbol '" + t[i].text + "'");
        ++i;
        std::string out;
        if (with_out) {
            if (t[i].text != "/") fail(t[i].col, "expected '/'");
            ++i;
            out = output_ref(t[i++]);
        }
        if (t[i].text != "push") fail(t[i].col, "expected 'push'");
        ++i;
        StackId g = stack_ref(t[i++]);
        if (t[i].text != "->") fail(t[i].col, "expected '->'");
        ++i;
        StateId dst = state_ref(t[i]);
        call_trans.push_back({src, *call, out, g, dst});
    }

    void handle_return(const std::vector<Token>& t) {
        if (kind == Kind::Fst) fail(t[0].col, "'return' lines are not allowed in an fst file");
        bool with_out = kind == Kind::Vpt;
        std::size_t n = with_out ? 9 : 7;
        expect_count(t, n, with_out ? "return <q> <r> / <out|eps> pop <g> -> <q'>"
                                    : "return <q> <r> pop <g> -> <q'>");
        std::size_t i = 1;
        StateId src = state_ref(t[i++]);
        auto ret = alphabet.returns.find(t[i].text);
        if (!ret) fail(t[i].col, "undeclared return symbol '" + t[i].text + "'");
        ++i;
        std::string out;
        if (with_out) {
            if (t[i].text != "/") fail(t[i].col, "expected '/'");
            ++i;
            out = output_ref(t[i++]);
        }
        if (t[i].text != "pop") fail(t[i].col, "expected 'pop'");
        ++i;
        StackId g = stack_ref(t[i++]);
        if (t[i].text != "->") fail(t[i].col, "expected '->'");
        ++i;
        StateId dst = state_ref(t[i]);
        ret_trans.push_back({src, *ret, out, g, dst});
    }

    void handle_fst_trans(const std::vector<Token>& t) {
        if (kind != Kind::Fst) fail(t[0].col, "'trans' lines are only allowed in an fst file");
        expect_count(t, 7, "trans <q> <a> / <out|eps> -> <q'>");
        StateId src = state_ref(t[1]);
        InputSymbol in{};
        if (auto c = alphabet.calls.find(t[2].text)) {
            in = call_sym(*c);
        } else if (auto r = alphabet.returns.find(t[2].text)) {
            in = ret_sym(*r);
        } else {
            fail(t[2].col, "undeclared input symbol '" + t[2].text + "'");
        }
        if (t[3].text != "/") fail(t[3].col, "expected '/'");
        std::string out = output_ref(t[4]);
        if (t[5].text != "->") fail(t[5].col, "expected '->'");
        StateId dst = state_ref(t[6]);
        fst_trans.push_back({src, in, out, dst});
    }

    void handle_line(const std::vector<Token>& t) {
        const std::string& head = t[0].text;
        if (!saw_kind) {
            if (head == "vpa") kind = Kind::Vpa;
            else if (head == "vpt") kind = Kind::Vpt;
            else if (head == "fst") kind = Kind::Fst;
            else fail(t[0].col, "file must start with its kind: vpa, vpt or fst");
            if (t.size() != 1) fail(t[1].col, "unexpected token after kind");
            saw_kind = true;
            return;
        }
        if (head == "alphabet") handle_alphabet(t);
        else if (head == "states") declare_symbols(t, 1, states, "state");
        else if (head == "stack") {
            if (kind == Kind::Fst) fail(t[0].col, "'stack' is not allowed in an fst file");
            declare_symbols(t, 1, stack_syms, "stack symbol");
        } else if (head == "initial") handle_state_list(t, initial);
        else if (head == "final") handle_state_list(t, final_set);
        else if (head == "call") handle_call(t);
        else if (head == "return") handle_return(t);
        else if (head == "trans") handle_fst_trans(t);
        else fail(t[0].col, "unknown directive '" + head + "'");
    }

    Machine finish() {
        std::sort(initial.begin(), initial.end());
        std::sort(final_set.begin(), final_set.end());
        if (kind == Kind::Fst) {
            Fst m;
            m.alphabet = alphabet;
            m.states = states;
            m.initial = initial;
            m.final = final_set;
            m.trans = fst_trans;
            return m;
        }
        Vpt t;
        t.alphabet = alphabet;
        t.states = states;
        t.stack_syms = stack_syms;
        t.initial = initial;
        t.final = final_set;
        t.call_trans = call_trans;
        t.ret_trans = ret_trans;
        if (kind == Kind::Vpt) return t;
        return vpa_of(t);
    }
};

void append_symbols(std::ostringstream& os, const std::string& head, const Interner& table) {
    if (table.empty()) return;
    os << head;
    for (const std::string& s : table.names()) os << ' ' << s;
    os << '\n';
}

void append_states(std::ostringstream& os, const std::string& head, const Interner& states,
                   const std::vector<StateId>& set) {
    if (set.empty()) return;
    os << head;
    for (StateId q : set) os << ' ' << states.name(q);
    os << '\n';
}

void append_alphabet(std::ostringstream& os, const StructuredAlphabet& a, bool with_outputs) {
    append_symbols(os, "alphabet calls", a.calls);
    append_symbols(os, "alphabet returns", a.returns);
    if (with_outputs && !a.outputs.empty()) {
        os << "alphabet outputs";
        for (char c : a.outputs) os << ' ' << c;
        os << '\n';
    }
}

std::string out_token(const std::string& out) { return out.empty() ? "eps" : out; }

}  // namespace

Machine parse_machine(std::string_view text) {
    Parser p;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++p.lineno;
        auto toks = tokenize(text.substr(pos, end - pos));
        if (!toks.empty()) p.handle_line(toks);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (!p.saw_kind) throw ParseError(1, 1, "empty machine file");
    return p.finish();
}

std::string serialize(const Vpt& m) {
    std::ostringstream os;
    os << "vpt\n";
    append_alphabet(os, m.alphabet, true);
    append_symbols(os, "states", m.states);
    append_symbols(os, "stack", m.stack_syms);
    append_states(os, "initial", m.states, m.initial);
    append_states(os, "final", m.states, m.final);
    for (const auto& t : m.call_trans)
        os << "call " << m.states.name(t.src) << ' ' << m.alphabet.calls.name(t.call) << " / "
           << out_token(t.out) << " push " << m.stack_syms.name(t.push) << " -> "
           << m.states.name(t.dst) << '\n';
    for (const auto& t : m.ret_trans)
        os << "return " << m.states.name(t.src) << ' ' << m.alphabet.returns.name(t.ret) << " / "
           << out_token(t.out) << " pop " << m.stack_syms.name(t.pop) << " -> "
           << m.states.name(t.dst) << '\n';
    return os.str();
}

std::string serialize(const Vpa& m) {
    std::ostringstream os;
    os << "vpa\n";
    append_alphabet(os, m.alphabet, !m.alphabet.outputs.empty());
    append_symbols(os, "states", m.states);
    append_symbols(os, "stack", m.stack_syms);
    append_states(os, "initial", m.states, m.initial);
    append_states(os, "final", m.states, m.final);
    for (const auto& t : m.call_trans)
        os << "call " << m.states.name(t.src) << ' ' << m.alphabet.calls.name(t.call) << " push "
           << m.stack_syms.name(t.push) << " -> " << m.states.name(t.dst) << '\n';
    for (const auto& t : m.ret_trans)
        os << "return " << m.states.name(t.src) << ' ' << m.alphabet.returns.name(t.ret) << " pop "
           << m.stack_syms.name(t.pop) << " -> " << m.states.name(t.dst) << '\n';
    return os.str();
}

std::string serialize(const Fst& m) {
    std::ostringstream os;
    os << "fst\n";
    append_alphabet(os, m.alphabet, true);
    append_symbols(os, "states", m.states);
    append_states(os, "initial", m.states, m.initial);
    append_states(os, "final", m.states, m.final);
    for (const auto& t : m.trans) {
        const std::string& sym =
            t.in.is_call ? m.alphabet.calls.name(t.in.id) : m.alphabet.returns.name(t.in.id);
        os << "trans " << m.states.name(t.src) << ' ' << sym << " / " << out_token(t.out)
           << " -> " << m.states.name(t.dst) << '\n';
    }
    return os.str();
}

std::string serialize(const Machine& m) {
    return std::visit([](const auto& x) { return serialize(x); }, m);
}

InputWord parse_word(std::string_view text, const StructuredAlphabet& alphabet) {
    InputWord w;
    for (const Token& tok : tokenize(text)) {
        if (auto c = alphabet.calls.find(tok.text)) {
            w.push_back(call_sym(*c));
        } else if (auto r = alphabet.returns.find(tok.text)) {
            w.push_back(ret_sym(*r));
        } else {
            throw ParseError(1, tok.col, "unknown input symbol '" + tok.text + "'");
        }
    }
    return w;
}

std::string word_text(const InputWord& w, const StructuredAlphabet& alphabet) {
    std::string s;
    for (const InputSymbol& a : w) {
        if (!s.empty()) s += ' ';
        s += a.is_call ? alphabet.calls.name(a.id) : alphabet.returns.name(a.id);
    }
    return s;
}

}  // namespace vpt
