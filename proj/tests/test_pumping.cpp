#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/random_machines.hpp"
#include "vpt/pumping.hpp"
#include "vpt/semantics.hpp"
#include "vpt/vpt_check.hpp"

using namespace vpt;
using testsupport::balanced_word;
using testsupport::Rng;

namespace {

PumpScheme identity_scheme(std::size_t n) {
    PumpScheme s;
    for (std::size_t i = 1; i <= n; ++i) s.indices.push_back(i);
    return s;
}

PumpScheme random_scheme(Rng& rng, std::size_t n, std::size_t max_len) {
    PumpScheme s;
    std::size_t len = rng.below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.indices.push_back(1 + rng.below(n));
    return s;
}

std::size_t pair_weight(const Decomposition& d, std::size_t i) {
    return d.u_parts[i].size() + d.u_bar[i].size();
}

}  // namespace

TEST_SUITE_BEGIN("pumping");

TEST_CASE("decomposing the call-loop machine isolates one loop iteration") {
    Vpt t = testsupport::call_loop_machine();
    InputWord u = balanced_word(18);  // height 18 > 1 * 2^4
    std::vector<RunTrace> runs = accepting_runs(t, u, 2);
    REQUIRE(runs.size() == 1);  // deterministic machine

    Decomposition d = decompose(t, u, runs[0], runs[0], 1);
    CHECK(d.n == 1);
    CHECK(d.u_parts[1].size() == 1);
    CHECK(d.u_parts[1][0].is_call);
    CHECK(d.u_bar[1].size() == 1);
    CHECK_FALSE(d.u_bar[1][0].is_call);

    PumpedTriple id = pump(d, identity_scheme(1));
    CHECK(id.input == u);
    CHECK(id.out1 == runs[0].output());
    CHECK(id.out2 == runs[0].output());
}

TEST_CASE("the height precondition is strict") {
    Vpt t = testsupport::call_loop_machine();
    InputWord at_bound = balanced_word(16);  // height exactly 16 = 1 * 2^4
    std::vector<RunTrace> runs = accepting_runs(t, at_bound, 1);
    REQUIRE(runs.size() == 1);
    CHECK_THROWS_AS(decompose(t, at_bound, runs[0], runs[0], 1), std::invalid_argument);
    CHECK_THROWS_AS(decompose(t, at_bound, runs[0], runs[0], 0), std::invalid_argument);

    InputWord tall = balanced_word(17);
    runs = accepting_runs(t, tall, 1);
    RunTrace not_a_run = runs[0];
    not_a_run.step_outputs[0] = "zz";
    CHECK_THROWS_AS(decompose(t, tall, runs[0], not_a_run, 1), std::invalid_argument);
}

TEST_CASE("pumped words stay in the transduction relation") {
    Vpt plain = testsupport::call_loop_machine();
    Vpt ambiguous = testsupport::call_loop_machine_ambiguous();

    struct Case {
        const Vpt* machine;
        std::size_t loops;
        std::size_t n;
    };
    for (const Case& c : {Case{&plain, 18, 1}, Case{&ambiguous, 34, 2}}) {
        InputWord u = balanced_word(c.loops);
        std::vector<RunTrace> runs = accepting_runs(*c.machine, u, 2);
        REQUIRE(!runs.empty());
        const RunTrace& run1 = runs.front();
        const RunTrace& run2 = runs.back();
        Decomposition d = decompose(*c.machine, u, run1, run2, c.n);

        PumpedTriple id = pump(d, identity_scheme(c.n));
        CHECK(id.input == u);
        CHECK(id.out1 == run1.output());
        CHECK(id.out2 == run2.output());

        PumpedTriple removed = pump(d, PumpScheme{});
        CHECK(removed.input.size() < u.size());
        CHECK(is_well_nested(removed.input));
        CHECK(produces(*c.machine, removed.input, removed.out1));
        CHECK(produces(*c.machine, removed.input, removed.out2));

        PumpedTriple doubled = pump(d, PumpScheme{{1, 1}});
        CHECK(doubled.input.size() == u.size() + pair_weight(d, 1) -
                                          [&] {
                                              std::size_t w = 0;
                                              for (std::size_t i = 2; i <= c.n; ++i)
                                                  w += pair_weight(d, i);
                                              return w;
                                          }());
        CHECK(produces(*c.machine, doubled.input, doubled.out1));
        CHECK(produces(*c.machine, doubled.input, doubled.out2));

        Rng rng(0xdeed + c.loops);
        for (int iter = 0; iter < 50; ++iter) {
            PumpScheme scheme = random_scheme(rng, c.n, 4);
            PumpedTriple p = pump(d, scheme);
            CHECK(is_well_nested(p.input));
            CHECK(produces(*c.machine, p.input, p.out1));
            CHECK(produces(*c.machine, p.input, p.out2));

            // length accounting: strictly shorter iff the scheme carries
            // less weight than the identity
            std::size_t scheme_weight = 0, id_weight = 0;
            for (std::size_t i : scheme.indices) scheme_weight += pair_weight(d, i);
            for (std::size_t i = 1; i <= c.n; ++i) id_weight += pair_weight(d, i);
            CHECK((p.input.size() < u.size()) == (scheme_weight < id_weight));
        }
    }
}

TEST_CASE("scheme entries outside the range are rejected") {
    Vpt t = testsupport::call_loop_machine();
    InputWord u = balanced_word(18);
    std::vector<RunTrace> runs = accepting_runs(t, u, 1);
    Decomposition d = decompose(t, u, runs[0], runs[0], 1);
    CHECK_THROWS_AS(pump(d, PumpScheme{{0}}), std::invalid_argument);
    CHECK_THROWS_AS(pump(d, PumpScheme{{2}}), std::invalid_argument);
}

TEST_CASE("shrinking a tall ambiguous witness") {
    Vpt two = testsupport::two_output_machine();
    InputWord u = balanced_word(9);  // height 9 > 8 * 1^4
    REQUIRE(transduce(two, u).size() >= 2);

    InputWord shorter = shrink_witness(two, u);
    CHECK(shorter.size() < u.size());
    CHECK(transduce(two, shorter).size() >= 2);
}

TEST_CASE("shrinking preconditions") {
    Vpt two = testsupport::two_output_machine();
    CHECK_THROWS_AS(shrink_witness(two, balanced_word(8)), std::invalid_argument);

    Vpt functional = testsupport::call_loop_machine();
    InputWord tall = balanced_word(200);  // high enough for N = 2, single output
    CHECK_THROWS_AS(shrink_witness(functional, tall), std::invalid_argument);
}

TEST_CASE("iterated shrinking reaches the decidable height zone") {
    Vpt two = testsupport::two_output_machine();
    InputWord u = balanced_word(12);
    std::size_t guard = 0;
    while (height(u) > height_bound(1)) {
        InputWord next = shrink_witness(two, u);
        CHECK(next.size() < u.size());
        CHECK(transduce(two, next).size() >= 2);
        u = next;
        REQUIRE(++guard < 40);
    }
    CHECK(transduce(two, u).size() >= 2);
}

TEST_SUITE_END();
