#include "vpt/pumping.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "vpt/vpt_check.hpp"

namespace vpt {

namespace {

InputWord slice(const InputWord& u, std::size_t from, std::size_t to) {
    return InputWord(u.begin() + from, u.begin() + to);
}

std::string join_outputs(const RunTrace& run, std::size_t from, std::size_t to) {
    std::string s;
    for (std::size_t i = from; i < to; ++i) s += run.step_outputs[i];
    return s;
}

}  // namespace

Decomposition decompose(const Vpt& t, const InputWord& u, const RunTrace& run1,
                        const RunTrace& run2, std::size_t n) {
    if (n < 1) throw std::invalid_argument("decompose: n must be at least 1");
    std::uint64_t states = std::max<std::size_t>(t.num_states(), 1);
    std::uint64_t threshold = n * states * states * states * states;
    std::size_t h = height(u);
    if (h <= threshold)
        throw std::invalid_argument("decompose: height must exceed n*N^4");
    if (!is_accepting_run(t, u, run1) || !is_accepting_run(t, u, run2))
        throw std::invalid_argument("decompose: traces are not accepting runs on u");

    std::vector<std::uint32_t> depth = depth_profile(u);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < depth.size(); ++i)
        if (depth[i] > depth[peak]) peak = i;  // leftmost maximum

    // alpha(k): last position <= peak at depth k; beta(k): first >= peak
    std::vector<std::size_t> alpha(h + 1), beta(h + 1);
    for (std::size_t i = 0; i <= peak; ++i) alpha[depth[i]] = i;
    for (std::size_t i = depth.size(); i-- > peak;) beta[depth[i]] = i;

    // group height levels by the state quadruple both runs show there
    using Quad = std::array<StateId, 4>;
    std::map<Quad, std::vector<std::size_t>> levels;
    for (std::size_t k = 0; k <= h; ++k) {
        Quad quad{run1.configs[alpha[k]].state, run1.configs[beta[k]].state,
                  run2.configs[alpha[k]].state, run2.configs[beta[k]].state};
        levels[quad].push_back(k);
    }

    const std::vector<std::size_t>* chosen = nullptr;
    for (const auto& [quad, ks] : levels) {
        if (ks.size() < n + 1) continue;
        if (!chosen || ks[n] < (*chosen)[n]) chosen = &ks;  // smallest k_{n+1}, then quad order
    }
    if (!chosen)
        throw std::logic_error("decompose: no recurring quadruple despite the height bound");

    std::vector<std::size_t> cut_a(n + 2), cut_b(n + 2);
    for (std::size_t i = 1; i <= n + 1; ++i) {
        cut_a[i] = alpha[(*chosen)[i - 1]];
        cut_b[i] = beta[(*chosen)[i - 1]];
    }

    Decomposition d;
    d.n = n;
    d.u_parts.resize(n + 1);
    d.u_bar.resize(n + 1);
    d.v_parts.resize(n + 1);
    d.v_bar.resize(n + 1);
    d.w_parts.resize(n + 1);
    d.w_bar.resize(n + 1);

    d.u_parts[0] = slice(u, 0, cut_a[1]);
    d.v_parts[0] = join_outputs(run1, 0, cut_a[1]);
    d.w_parts[0] = join_outputs(run2, 0, cut_a[1]);
    for (std::size_t i = 1; i <= n; ++i) {
        d.u_parts[i] = slice(u, cut_a[i], cut_a[i + 1]);
        d.v_parts[i] = join_outputs(run1, cut_a[i], cut_a[i + 1]);
        d.w_parts[i] = join_outputs(run2, cut_a[i], cut_a[i + 1]);
        d.u_bar[i] = slice(u, cut_b[i + 1], cut_b[i]);
        d.v_bar[i] = join_outputs(run1, cut_b[i + 1], cut_b[i]);
        d.w_bar[i] = join_outputs(run2, cut_b[i + 1], cut_b[i]);
        if (d.u_parts[i].empty() || d.u_bar[i].empty())
            throw std::logic_error("decompose: empty pumped fragment");
    }
    d.u_mid = slice(u, cut_a[n + 1], cut_b[n + 1]);
    d.v_mid = join_outputs(run1, cut_a[n + 1], cut_b[n + 1]);
    d.w_mid = join_outputs(run2, cut_a[n + 1], cut_b[n + 1]);
    d.u_bar[0] = slice(u, cut_b[1], u.size());
    d.v_bar[0] = join_outputs(run1, cut_b[1], u.size());
    d.w_bar[0] = join_outputs(run2, cut_b[1], u.size());
    return d;
}

PumpedTriple pump(const Decomposition& d, const PumpScheme& scheme) {
    for (std::size_t i : scheme.indices)
        if (i < 1 || i > d.n)
            throw std::invalid_argument("pump: scheme entry outside {1..n}");

    PumpedTriple r;
    auto append_word = [&r](const InputWord& w) {
        r.input.insert(r.input.end(), w.begin(), w.end());
    };

    append_word(d.u_parts[0]);
    r.out1 += d.v_parts[0];
    r.out2 += d.w_parts[0];
    for (std::size_t i : scheme.indices) {
        append_word(d.u_parts[i]);
        r.out1 += d.v_parts[i];
        r.out2 += d.w_parts[i];
    }
    append_word(d.u_mid);
    r.out1 += d.v_mid;
    r.out2 += d.w_mid;
    for (std::size_t k = scheme.indices.size(); k-- > 0;) {
        std::size_t i = scheme.indices[k];
        append_word(d.u_bar[i]);
        r.out1 += d.v_bar[i];
        r.out2 += d.w_bar[i];
    }
    append_word(d.u_bar[0]);
    r.out1 += d.v_bar[0];
    r.out2 += d.w_bar[0];
    return r;
}

InputWord shrink_witness(const Vpt& t, const InputWord& u) {
    std::uint64_t bound = height_bound(std::max<std::size_t>(t.num_states(), 1));
    if (height(u) <= bound)
        throw std::invalid_argument("shrink_witness: height must exceed 8*N^4");

    // first pair of accepting runs with distinct outputs, in run order
    std::optional<RunTrace> first, second;
    std::string first_out;
    for_each_accepting_run(t, u, [&](const RunTrace& run) {
        if (!first) {
            first = run;
            first_out = run.output();
            return true;
        }
        if (run.output() != first_out) {
            second = run;
            return false;
        }
        return true;
    });
    if (!first || !second)
        throw std::invalid_argument("shrink_witness: input does not have two distinct outputs");

    constexpr std::size_t kParts = 8;
    Decomposition d = decompose(t, u, *first, *second, kParts);

    // schemes of length <= 7 in length-lexicographic order
    std::vector<std::size_t> scheme;
    for (std::size_t len = 0; len <= kParts - 1; ++len) {
        scheme.assign(len, 1);
        while (true) {
            PumpedTriple p = pump(d, PumpScheme{scheme});
            if (p.input.size() < u.size() && p.out1 != p.out2) return p.input;
            // next scheme of this length
            std::size_t pos = len;
            while (pos > 0 && scheme[pos - 1] == kParts) --pos;
            if (pos == 0) break;
            ++scheme[pos - 1];
            for (std::size_t i = pos; i < len; ++i) scheme[i] = 1;
        }
    }
    throw std::logic_error("shrink_witness: no shrinking scheme found");
}

}  // namespace vpt
