#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "vpt/machines.hpp"
#include "vpt/verdicts.hpp"

namespace vpt {

enum class OracleVerdict { Functional, NonFunctional, EquivUpTo, Differ };

/// Ground-truth report from a brute-force enumeration. Witnesses are
/// re-checked through the run semantics before being reported.
struct OracleReport {
    OracleVerdict verdict = OracleVerdict::Functional;
    std::uint64_t checked_count = 0;
    std::size_t max_len = 0;
    std::optional<Witness> witness;           // NonFunctional / output difference
    std::optional<InputWord> domain_witness;  // Differ on domains
};

struct OracleOptions {
    /// Generate-and-test over all words instead of configuration-set
    /// pruning; exists to differentially test the pruner.
    bool naive = false;
    /// Cap on intermediate output sets per word; exceeding it raises
    /// ResourceLimitError rather than risking a wrong verdict.
    std::size_t max_outputs_per_word = std::size_t(1) << 20;
};

/// Streams dom(T) restricted to |u| <= max_len in length-lexicographic
/// order (calls before returns, then by id).
class DomainEnumerator {
public:
    DomainEnumerator(const Vpt& t, std::size_t max_len, bool naive = false);

    std::optional<InputWord> next();

private:
    void fill_layer();

    const Vpt* machine_;
    std::size_t max_len_;
    bool naive_;
    std::size_t current_len_ = 0;
    bool exhausted_ = false;
    std::deque<InputWord> buffer_;
};

/// All domain words up to max_len, in stream order.
std::vector<InputWord> enumerate_domain(const Vpt& t, std::size_t max_len,
                                        bool naive = false);

/// Exhaustive functionality check on inputs up to max_len: NonFunctional
/// with the shortest witness, otherwise Functional up to the bound.
OracleReport brute_functional(const Vpt& t, std::size_t max_len, const OracleOptions& opts = {});

/// Exhaustive equivalence check on inputs up to max_len. Differ carries
/// either a word accepted by exactly one machine or an output-difference
/// witness; otherwise EquivUpTo(max_len).
OracleReport brute_equiv(const Vpt& t1, const Vpt& t2, std::size_t max_len,
                         const OracleOptions& opts = {});

}  // namespace vpt
