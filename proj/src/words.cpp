#include "vpt/words.hpp"

#include <stdexcept>

namespace vpt {

bool is_well_nested(const InputWord& w) {
    std::size_t depth = 0;
    for (const InputSymbol& s : w) {
        if (s.is_call) {
            ++depth;
        } else {
            if (depth == 0) return false;
            --depth;
        }
    }
    return depth == 0;
}

std::vector<std::uint32_t> depth_profile(const InputWord& w) {
    std::vector<std::uint32_t> profile;
    profile.reserve(w.size() + 1);
    profile.push_back(0);
    std::uint32_t depth = 0;
    for (const InputSymbol& s : w) {
        if (s.is_call) {
            ++depth;
        } else {
            if (depth == 0) return {};
            --depth;
        }
        profile.push_back(depth);
    }
    return profile;
}

std::size_t height(const InputWord& w) {
    auto profile = depth_profile(w);
    if (profile.empty() || profile.back() != 0)
        throw std::invalid_argument("height: word is not well nested");
    std::uint32_t max_depth = 0;
    for (std::uint32_t d : profile) max_depth = std::max(max_depth, d);
    return max_depth;
}

std::vector<std::pair<std::size_t, std::size_t>> matching(const InputWord& w) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_call) {
            open.push_back(i);
        } else {
            if (open.empty())
                throw std::invalid_argument("matching: word is not well nested");
            pairs.emplace_back(open.back(), i);
            open.pop_back();
        }
    }
    if (!open.empty())
        throw std::invalid_argument("matching: word is not well nested");
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace vpt
