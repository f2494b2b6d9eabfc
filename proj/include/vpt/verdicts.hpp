#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vpt/words.hpp"

namespace vpt {

/// Non-functionality evidence: one input with two distinct outputs.
struct Witness {
    InputWord input;
    std::string out1;
    std::string out2;
};

enum class Verdict { Functional, NonFunctional, Inconclusive };

struct FunctionalityVerdict {
    Verdict verdict = Verdict::Inconclusive;
    /// True when the claim covers the whole transduction; false for
    /// verdicts valid only up to a height cap / length bound.
    bool exact = false;
    std::optional<Witness> witness;
    std::uint64_t nodes = 0;       // search effort (expanded nodes / checked words)
    std::uint64_t height_cap = 0;  // VPT checks
    std::uint64_t bound = 0;       // bounded FST check: input length explored

    bool functional() const { return verdict == Verdict::Functional; }
    bool non_functional() const { return verdict == Verdict::NonFunctional; }
};

enum class EquivOutcome { Equivalent, NotEquivalent, Inconclusive };

struct EquivVerdict {
    EquivOutcome outcome = EquivOutcome::Inconclusive;
    bool exact = false;
    /// Word accepted by exactly one machine.
    std::optional<InputWord> domain_witness;
    /// Input with differing outputs across the two machines.
    std::optional<Witness> output_witness;
};

enum class DomainRel { Equal, Differ, Inconclusive };

struct DomainEquivVerdict {
    DomainRel outcome = DomainRel::Inconclusive;
    std::optional<InputWord> witness;  // in the symmetric difference
    std::uint64_t nodes = 0;
};

}  // namespace vpt
