#pragma once

#include <string>

#include "vpt/machines.hpp"

namespace testsupport {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

vpt::Vpt load_vpt(const std::string& name);
vpt::Fst load_fst(const std::string& name);

/// fig1 output formulas for the two branches at pump count n; both must
/// agree for every n.
std::string fig1_upper_formula(std::size_t n);
std::string fig1_lower_formula(std::size_t n);

/// The fig1 domain word c1 (c2)^n c3 r3 (r2)^n r1.
vpt::InputWord fig1_domain_word(const vpt::Vpt& fig1, std::size_t n);

/// Two-state machine: a call loop on the way up, a return tail on the way
/// down; dom = c^k r^k (k >= 1), output a^k b^k.
vpt::Vpt call_loop_machine();

/// call_loop_machine with a second, longer output on the call loop, so
/// every input has several runs.
vpt::Vpt call_loop_machine_ambiguous();

/// One-state machine emitting x or y per call (see shrink1.vpt).
vpt::Vpt two_output_machine();

/// c^k r^k word over a machine with one call and one return symbol.
vpt::InputWord balanced_word(std::size_t k);

}  // namespace testsupport
