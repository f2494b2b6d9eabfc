#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace vpt {

struct PrimitiveRoot {
    std::string root;
    std::size_t exponent;  // root^exponent == the input

    bool operator==(const PrimitiveRoot&) const = default;
};

/// Unique primitive word r and exponent e with r^e == x.
/// Uses the border (failure function) method. Throws on empty input.
PrimitiveRoot primitive_root(std::string_view x);

/// Common root z with x, y in z* when x and y commute (xy == yx), nullopt
/// otherwise. For two empty inputs the root is the empty word.
std::optional<std::string> commute(std::string_view x, std::string_view y);

/// Split (t1, t2) with x == t1 t2 and y == t2 t1 when x and y are
/// conjugate, nullopt otherwise. Returns the split with shortest t1.
std::optional<std::pair<std::string, std::string>> conjugacy_witness(std::string_view x,
                                                                     std::string_view y);

/// Fine–Wilf style overlap: when some power of x and some power of y share
/// a factor `shared` of length at least |x|+|y|-gcd(|x|,|y|), the primitive
/// roots of x and y are conjugate. Returns the lexicographically least
/// (t1, t2) with t1 t2 primitive, x in (t1 t2)+ and y in (t2 t1)+; nullopt
/// when the length condition fails (no claim is made then).
std::optional<std::pair<std::string, std::string>> overlap_roots(std::string_view x,
                                                                 std::string_view y,
                                                                 std::string_view shared);

/// Eventually periodic infinite word prefix.period^omega.
struct OmegaWord {
    std::string prefix;
    std::string period;  // nonempty
};

/// Equality of eventually periodic words, decided on the finite prefix of
/// length max(|prefixes|) + lcm(|periods|). Throws std::invalid_argument on
/// an empty period and std::overflow_error when the lcm overflows.
bool omega_eq(const OmegaWord& a, const OmegaWord& b);

/// Smallest (alpha, beta) with x p^alpha == y p^beta when the infinite
/// words x p^omega and y p^omega coincide; nullopt otherwise.
std::optional<std::pair<std::uint64_t, std::uint64_t>> omega_align(std::string_view x,
                                                                   std::string_view p,
                                                                   std::string_view y);

/// One side of an equation of the form a0 (a1)^i am (a1')^i a0': a five
/// factor pattern instantiated at an exponent.
struct ExponentPattern {
    std::string front;
    std::string front_rep;
    std::string middle;
    std::string back_rep;
    std::string back;

    std::string expand(std::size_t i) const;
};

/// Whether both patterns expand to the same word at exponent i. Holding at
/// i in {0,1,2,3} implies holding for every i.
bool exponent_patterns_equal(const ExponentPattern& lhs, const ExponentPattern& rhs,
                             std::size_t i);

}  // namespace vpt
