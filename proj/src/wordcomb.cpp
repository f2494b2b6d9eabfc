#include "vpt/wordcomb.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace vpt {

namespace {

std::string repeat(std::string_view x, std::size_t n) {
    std::string r;
    r.reserve(x.size() * n);
    for (std::size_t i = 0; i < n; ++i) r += x;
    return r;
}

/// Character at position i of prefix.period^omega.
char omega_at(const OmegaWord& w, std::size_t i) {
    if (i < w.prefix.size()) return w.prefix[i];
    return w.period[(i - w.prefix.size()) % w.period.size()];
}

}  // namespace

PrimitiveRoot primitive_root(std::string_view x) {
    if (x.empty()) throw std::invalid_argument("primitive_root: empty word");

    // longest proper border via the KMP failure function
    std::vector<std::size_t> border(x.size(), 0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        std::size_t b = border[i - 1];
        while (b > 0 && x[i] != x[b]) b = border[b - 1];
        if (x[i] == x[b]) ++b;
        border[i] = b;
    }
    std::size_t period = x.size() - border.back();
    if (x.size() % period != 0) return {std::string(x), 1};
    return {std::string(x.substr(0, period)), x.size() / period};
}

std::optional<std::string> commute(std::string_view x, std::string_view y) {
    std::string xy = std::string(x) + std::string(y);
    std::string yx = std::string(y) + std::string(x);
    if (xy != yx) return std::nullopt;
    if (xy.empty()) return std::string();
    return primitive_root(xy).root;
}

std::optional<std::pair<std::string, std::string>> conjugacy_witness(std::string_view x,
                                                                     std::string_view y) {
    if (x.size() != y.size()) return std::nullopt;
    if (x.empty()) return std::make_pair(std::string(), std::string());
    std::string doubled = std::string(x) + std::string(x);
    std::size_t k = doubled.find(y);
    if (k == std::string::npos || k > x.size()) return std::nullopt;
    return std::make_pair(std::string(x.substr(0, k)), std::string(x.substr(k)));
}

std::optional<std::pair<std::string, std::string>> overlap_roots(std::string_view x,
                                                                 std::string_view y,
                                                                 std::string_view shared) {
    if (x.empty() || y.empty()) throw std::invalid_argument("overlap_roots: empty word");
    std::size_t d = std::gcd(x.size(), y.size());
    if (shared.size() < x.size() + y.size() - d) return std::nullopt;

    // precondition check: shared must occur in some power of each word
    auto occurs_in_power = [&shared](std::string_view w) {
        std::string power = repeat(w, shared.size() / w.size() + 2);
        return power.find(shared) != std::string::npos;
    };
    if (!occurs_in_power(x) || !occurs_in_power(y)) return std::nullopt;

    std::string p = primitive_root(x).root;
    std::string q = primitive_root(y).root;

    std::optional<std::pair<std::string, std::string>> best;
    for (std::size_t k = 0; k <= p.size(); ++k) {
        std::string t1 = p.substr(0, k), t2 = p.substr(k);
        if (t2 + t1 != q) continue;
        auto cand = std::make_pair(t1, t2);
        if (!best || cand < *best) best = cand;
    }
    return best;
}

bool omega_eq(const OmegaWord& a, const OmegaWord& b) {
    if (a.period.empty() || b.period.empty())
        throw std::invalid_argument("omega_eq: empty period");
    std::uint64_t la = a.period.size(), lb = b.period.size();
    std::uint64_t g = std::gcd(la, lb);
    if (la / g > (std::numeric_limits<std::uint64_t>::max() - std::max(a.prefix.size(), b.prefix.size())) / lb)
        throw std::overflow_error("omega_eq: period lcm overflow");
    std::uint64_t limit = std::max(a.prefix.size(), b.prefix.size()) + (la / g) * lb;
    for (std::uint64_t i = 0; i < limit; ++i)
        if (omega_at(a, i) != omega_at(b, i)) return false;
    return true;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> omega_align(std::string_view x,
                                                                   std::string_view p,
                                                                   std::string_view y) {
    if (p.empty()) throw std::invalid_argument("omega_align: empty period");
    OmegaWord wx{std::string(x), std::string(p)};
    OmegaWord wy{std::string(y), std::string(p)};
    if (!omega_eq(wx, wy)) return std::nullopt;
    // For primitive p equality forces the length difference to be a multiple
    // of |p|; for a proper power it may not be (a.(aa)^w = (aa)^w), and then
    // no finite alignment exists.
    std::uint64_t diff = x.size() >= y.size() ? x.size() - y.size() : y.size() - x.size();
    if (diff % p.size() != 0) return std::nullopt;
    std::uint64_t alpha = 0, beta = 0;
    if (x.size() >= y.size())
        beta = diff / p.size();
    else
        alpha = diff / p.size();
    if (std::string(x) + repeat(p, alpha) != std::string(y) + repeat(p, beta))
        throw std::logic_error("omega_align: alignment arithmetic out of step");
    return std::make_pair(alpha, beta);
}

std::string ExponentPattern::expand(std::size_t i) const {
    std::string r = front;
    r += repeat(front_rep, i);
    r += middle;
    r += repeat(back_rep, i);
    r += back;
    return r;
}

bool exponent_patterns_equal(const ExponentPattern& lhs, const ExponentPattern& rhs,
                             std::size_t i) {
    return lhs.expand(i) == rhs.expand(i);
}

}  // namespace vpt
