#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpt/machines.hpp"

namespace vpt {

/// Raised when a bounded search exceeds its configured budget.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Machine configuration: control state plus stack content, bottom first.
struct Configuration {
    StateId state;
    std::vector<StackId> stack;

    bool operator==(const Configuration&) const = default;
    auto operator<=>(const Configuration&) const = default;
};

/// Reference to a declared transition: index into call_trans or ret_trans.
struct StepRef {
    bool is_call;
    std::uint32_t index;

    bool operator==(const StepRef&) const = default;
};

/// One run of a transducer: |input|+1 configurations plus the output word
/// and transition taken at each step.
struct RunTrace {
    std::vector<Configuration> configs;
    std::vector<std::string> step_outputs;
    std::vector<StepRef> steps;

    std::string output() const {
        std::string v;
        for (const std::string& o : step_outputs) v += o;
        return v;
    }
};

/// Successor configurations (with the produced output) of c on symbol a,
/// in transition declaration order, duplicates removed. Return symbols on
/// an empty stack yield no successors.
/// Throws std::invalid_argument when a is outside the machine's alphabet.
std::vector<std::pair<Configuration, std::string>> step(const Vpt& m, const Configuration& c,
                                                        InputSymbol a);

/// All outputs of accepting runs on u: { v | (u,v) in [[m]] }.
/// `max_items` caps the intermediate (configuration, output) sets; on
/// overflow a ResourceLimitError is raised.
std::set<std::string> transduce(const Vpt& m, const InputWord& u,
                                std::size_t max_items = SIZE_MAX);

/// Membership test (u,v) in [[m]] without enumerating all outputs.
bool produces(const Vpt& m, const InputWord& u, const std::string& v);

bool accepts(const Vpt& m, const InputWord& u);
bool accepts(const Vpa& m, const InputWord& u);

/// Enumerates accepting runs on u in transition declaration order (first
/// choice point varies last). The callback returns false to stop early.
void for_each_accepting_run(const Vpt& m, const InputWord& u,
                            const std::function<bool(const RunTrace&)>& cb);

/// First `limit` accepting runs, in enumeration order.
std::vector<RunTrace> accepting_runs(const Vpt& m, const InputWord& u, std::size_t limit);

/// Checks that `trace` is an accepting run of m on u (shape, declared
/// transitions, initial/final states, stack discipline).
bool is_accepting_run(const Vpt& m, const InputWord& u, const RunTrace& trace);

/// Shortest word in dom(m), or nullopt when the domain is empty.
std::optional<InputWord> domain_nonempty(const Vpt& m);
std::optional<InputWord> domain_nonempty(const Vpa& m);

}  // namespace vpt
