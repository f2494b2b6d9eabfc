#pragma once

#include <string>
#include <vector>

#include "vpt/alphabet.hpp"
#include "vpt/words.hpp"

namespace vpt {

/// Call transition of a VPT: reads a call symbol, emits an output word and
/// pushes one stack symbol.
struct VptCallTrans {
    StateId src;
    SymbolId call;
    std::string out;
    StackId push;
    StateId dst;

    bool operator==(const VptCallTrans&) const = default;
};

/// Return transition of a VPT: reads a return symbol, emits an output word
/// and pops one stack symbol. There are no transitions on the empty stack.
struct VptRetTrans {
    StateId src;
    SymbolId ret;
    std::string out;
    StackId pop;
    StateId dst;

    bool operator==(const VptRetTrans&) const = default;
};

struct VpaCallTrans {
    StateId src;
    SymbolId call;
    StackId push;
    StateId dst;

    bool operator==(const VpaCallTrans&) const = default;
};

struct VpaRetTrans {
    StateId src;
    SymbolId ret;
    StackId pop;
    StateId dst;

    bool operator==(const VpaRetTrans&) const = default;
};

/// Visibly pushdown transducer. Calls push, returns pop, and every
/// transition carries an output word over the output alphabet.
struct Vpt {
    StructuredAlphabet alphabet;
    Interner states;
    Interner stack_syms;
    std::vector<StateId> initial;  // sorted, unique
    std::vector<StateId> final;    // sorted, unique
    std::vector<VptCallTrans> call_trans;
    std::vector<VptRetTrans> ret_trans;

    std::size_t num_states() const { return states.size(); }

    bool is_initial(StateId q) const {
        return std::binary_search(initial.begin(), initial.end(), q);
    }
    bool is_final(StateId q) const {
        return std::binary_search(final.begin(), final.end(), q);
    }

    bool operator==(const Vpt&) const = default;
};

/// Visibly pushdown automaton: a Vpt without outputs.
struct Vpa {
    StructuredAlphabet alphabet;
    Interner states;
    Interner stack_syms;
    std::vector<StateId> initial;
    std::vector<StateId> final;
    std::vector<VpaCallTrans> call_trans;
    std::vector<VpaRetTrans> ret_trans;

    std::size_t num_states() const { return states.size(); }

    bool is_initial(StateId q) const {
        return std::binary_search(initial.begin(), initial.end(), q);
    }
    bool is_final(StateId q) const {
        return std::binary_search(final.begin(), final.end(), q);
    }

    bool operator==(const Vpa&) const = default;
};

struct FstTrans {
    StateId src;
    InputSymbol in;
    std::string out;
    StateId dst;

    bool operator==(const FstTrans&) const = default;
};

/// Finite state transducer over the flattened input alphabet
/// (calls and returns, no stack discipline).
struct Fst {
    StructuredAlphabet alphabet;
    Interner states;
    std::vector<StateId> initial;
    std::vector<StateId> final;
    std::vector<FstTrans> trans;

    std::size_t num_states() const { return states.size(); }

    bool is_initial(StateId q) const {
        return std::binary_search(initial.begin(), initial.end(), q);
    }
    bool is_final(StateId q) const {
        return std::binary_search(final.begin(), final.end(), q);
    }

    bool operator==(const Fst&) const = default;
};

/// Structural validation outcome. Empty iff the machine is well formed.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Vpt& m);
ValidationReport validate(const Vpa& m);
ValidationReport validate(const Fst& m);

/// Underlying automaton of a transducer (outputs dropped).
Vpa vpa_of(const Vpt& m);

/// Vpt that accepts like the Vpa and outputs the empty word everywhere.
Vpt vpt_of(const Vpa& m);

/// Disjoint union of two transducers over the same call/return alphabet
/// (output alphabets are merged). State and stack names are prefixed to
/// keep them unique. Throws std::invalid_argument on alphabet mismatch.
Vpt disjoint_union(const Vpt& a, const Vpt& b);

/// Rewrites m's input symbol ids against `target`, matching by name.
/// The call and return name sets must coincide; output symbols are merged
/// into the result's alphabet. Throws std::invalid_argument otherwise.
Vpt remap_inputs(const Vpt& m, const StructuredAlphabet& target);

/// All outputs of accepting FST runs on u.
std::vector<std::string> fst_outputs(const Fst& m, const InputWord& u);

bool fst_accepts(const Fst& m, const InputWord& u);

}  // namespace vpt
