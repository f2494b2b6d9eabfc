#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vpt/machines.hpp"
#include "vpt/semantics.hpp"

namespace vpt {

/// Parallel decomposition of an input word and the outputs of two runs on
/// it into u_0 .. u_n, u_mid, u_nbar .. u_0bar (and matching v/w splits).
/// Removing, repeating or permuting the (u_i, u_ibar) pairs in parallel
/// preserves membership in the transduction.
struct Decomposition {
    std::size_t n = 0;
    std::vector<InputWord> u_parts;  // index 0..n
    InputWord u_mid;
    std::vector<InputWord> u_bar;    // index 0..n (u_bar[i] matches u_parts[i])
    std::vector<std::string> v_parts;
    std::string v_mid;
    std::vector<std::string> v_bar;
    std::vector<std::string> w_parts;
    std::string w_mid;
    std::vector<std::string> w_bar;
};

/// Pump scheme: a sequence over {1..n}, possibly empty, repeats allowed.
/// The identity scheme (1,2,..,n) reproduces the original words.
struct PumpScheme {
    std::vector<std::size_t> indices;
};

struct PumpedTriple {
    InputWord input;
    std::string out1;
    std::string out2;
};

/// Cuts u and the two runs at synchronized call/return loop boundaries.
///
/// Picks the leftmost maximal-height position, walks the enclosing height
/// levels on both sides, and selects a state quadruple recurring on more
/// than n levels (present whenever h(u) > n*N^4 for N = |states|). The
/// quadruple whose (n+1)-st chosen level is lowest wins, ties broken by
/// state ids.
///
/// Preconditions: n >= 1, h(u) > n*N^4, and both traces are accepting runs
/// of t on u. Violations raise std::invalid_argument.
Decomposition decompose(const Vpt& t, const InputWord& u, const RunTrace& run1,
                        const RunTrace& run2, std::size_t n);

/// Reassembles (u_pi, v_pi, w_pi): the scheme's parts in order, the mirror
/// parts in reverse order. Throws std::invalid_argument on out-of-range
/// scheme entries.
PumpedTriple pump(const Decomposition& d, const PumpScheme& scheme);

/// Strictly shorter input that still has two distinct outputs. Decomposes
/// with n = 8 for the first pair of output-distinct runs and scans schemes
/// of length <= 7.
///
/// Preconditions: |transduce(t,u)| >= 2 and h(u) > 8*N^4.
InputWord shrink_witness(const Vpt& t, const InputWord& u);

}  // namespace vpt
