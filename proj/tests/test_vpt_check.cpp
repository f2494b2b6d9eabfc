#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/random_machines.hpp"
#include "vpt/expand.hpp"
#include "vpt/fst_check.hpp"
#include "vpt/oracle.hpp"
#include "vpt/semantics.hpp"
#include "vpt/textio.hpp"
#include "vpt/vpt_check.hpp"

using namespace vpt;
using testsupport::fig1_domain_word;
using testsupport::load_vpt;

TEST_SUITE_BEGIN("vptcheck");

TEST_CASE("height bound values") {
    CHECK(height_bound(1) == 8);
    CHECK(height_bound(2) == 128);
    CHECK(height_bound(3) == 648);
    CHECK_THROWS_AS(height_bound(0), std::invalid_argument);
}

TEST_CASE("expansion accepts exactly the height-capped domain of fig1") {
    Vpt fig1 = load_vpt("fig1.vpt");
    LazyExpansion cap2(fig1, 2);
    CHECK(expansion_accepts(cap2, fig1_domain_word(fig1, 0)));
    CHECK(expansion_outputs(cap2, fig1_domain_word(fig1, 0)) ==
          std::set<std::string>{"dfcabgh"});
    CHECK_FALSE(expansion_accepts(cap2, fig1_domain_word(fig1, 1)));  // height 3

    LazyExpansion cap3(fig1, 3);
    CHECK(expansion_accepts(cap3, fig1_domain_word(fig1, 1)));
    CHECK(expansion_outputs(cap3, fig1_domain_word(fig1, 1)) ==
          std::set<std::string>{"dfcabcabcabgh"});
    CHECK_FALSE(expansion_accepts(cap3, fig1_domain_word(fig1, 2)));

    CHECK_THROWS_AS(LazyExpansion(fig1, 0), std::invalid_argument);
}

TEST_CASE("expansion reproduces the capped transduction on random machines") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        LazyExpansion expansion(t, 3);
        for (const InputWord& u : enumerate_domain(t, 8)) {
            if (height(u) <= 3) {
                CHECK(expansion_outputs(expansion, u) == transduce(t, u));
            } else {
                CHECK_FALSE(expansion_accepts(expansion, u));
            }
        }
    }
}

TEST_CASE("materialized expansion behaves like the lazy one") {
    Vpt fig1 = load_vpt("fig1.vpt");
    LazyExpansion expansion(fig1, 3);
    auto fst = materialize(expansion, 10'000);
    REQUIRE(fst.has_value());
    CHECK(validate(*fst).ok());
    for (std::size_t n = 0; n <= 2; ++n) {
        InputWord u = fig1_domain_word(fig1, n);
        auto direct = expansion_outputs(expansion, u);
        auto via_fst = fst_outputs(*fst, u);
        CHECK(std::set<std::string>(via_fst.begin(), via_fst.end()) == direct);
    }
    CHECK_FALSE(materialize(expansion, 2).has_value());  // budget respected
}

TEST_CASE("empty-domain machines expand to the empty language") {
    Vpt t = testsupport::random_vpt(3);
    t.final.clear();
    LazyExpansion expansion(t, 4);
    CHECK_FALSE(expansion_accepts(expansion, {}));
    CHECK(enumerate_domain(t, 6).empty());
}

TEST_CASE("fig1 is functional up to any cap, exactly at the full bound") {
    Vpt fig1 = load_vpt("fig1.vpt");
    CheckOptions opts;
    opts.height_cap = 6;
    FunctionalityVerdict v = check_functional(fig1, opts);
    CHECK(v.functional());
    CHECK_FALSE(v.exact);  // 6 < 8 * 8^4
    CHECK(v.height_cap == 6);

    opts.height_cap = height_bound(fig1.num_states());
    // the full-bound run on an 8-state machine is not required to finish
    // under a small budget; it must be labeled inconclusive then
    opts.node_budget = 500;
    FunctionalityVerdict bounded = check_functional(fig1, opts);
    CHECK((bounded.verdict == Verdict::Inconclusive || bounded.functional()));
}

TEST_CASE("the mutated fig1 is caught with the exact minimal witness") {
    Vpt bad = load_vpt("fig1_bad.vpt");
    CheckOptions opts;
    opts.height_cap = 6;
    FunctionalityVerdict v = check_functional(bad, opts);
    CHECK(v.non_functional());
    CHECK(v.exact);
    REQUIRE(v.witness.has_value());
    CHECK(word_text(v.witness->input, bad.alphabet) == "c1 c3 r3 r1");
    CHECK(v.witness->out1 == "dfcabgh");
    CHECK(v.witness->out2 == "dfcabgx");
    CHECK(produces(bad, v.witness->input, v.witness->out1));
    CHECK(produces(bad, v.witness->input, v.witness->out2));
}

TEST_CASE("deterministic machines are functional at the exact bound") {
    Vpt loop = testsupport::call_loop_machine();
    FunctionalityVerdict v = check_functional(loop);  // default cap 8 * 2^4 = 128
    CHECK(v.functional());
    CHECK(v.exact);
}

TEST_CASE("a one-state ambiguous machine completes the full-bound search") {
    Vpt two = testsupport::two_output_machine();
    FunctionalityVerdict v = check_functional(two);  // N = 1, cap 8
    CHECK(v.non_functional());
    CHECK(v.exact);
    REQUIRE(v.witness.has_value());
    CHECK(produces(two, v.witness->input, v.witness->out1));
    CHECK(produces(two, v.witness->input, v.witness->out2));
    CHECK(v.witness->out1 != v.witness->out2);
}

TEST_CASE("machines without initial or final states are functional") {
    Vpt none = std::get<Vpt>(parse_machine("vpt\n"));
    FunctionalityVerdict v = check_functional(none);
    CHECK(v.functional());
    CHECK(v.exact);

    Vpt fig1 = load_vpt("fig1.vpt");
    fig1.final.clear();
    CHECK(check_functional(fig1).functional());
}

TEST_CASE("the full-bound expansion accepts the whole domain of small machines") {
    for (std::uint64_t seed = 61; seed <= 80; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        std::uint64_t cap = height_bound(t.num_states());
        LazyExpansion expansion(t, cap);
        for (const InputWord& u : enumerate_domain(t, 8)) {
            CHECK(expansion_accepts(expansion, u));
            CHECK(expansion_outputs(expansion, u) == transduce(t, u));
        }
    }
}

TEST_CASE("a one-state functional machine with two stack symbols completes the full bound") {
    Vpt t;
    t.alphabet.calls.add("c");
    t.alphabet.returns.add("r");
    t.alphabet.add_output('a');
    t.alphabet.add_output('b');
    StateId s = t.states.add("s");
    StackId g0 = t.stack_syms.add("g0");
    StackId g1 = t.stack_syms.add("g1");
    t.initial = {s};
    t.final = {s};
    t.call_trans.push_back({s, 0, "a", g0, s});
    t.call_trans.push_back({s, 0, "a", g1, s});
    t.ret_trans.push_back({s, 0, "b", g0, s});
    t.ret_trans.push_back({s, 0, "b", g1, s});

    FunctionalityVerdict v = check_functional(t);  // cap 8, every pair stack explored
    CHECK(v.functional());
    CHECK(v.exact);
    CHECK(v.height_cap == 8);
    CHECK(v.nodes > 1000);  // the stack-pair space really was walked
}

TEST_CASE("budget exhaustion is an explicit outcome") {
    Vpt fig1 = load_vpt("fig1.vpt");
    CheckOptions opts;
    opts.height_cap = 40;
    opts.node_budget = 5;
    FunctionalityVerdict v = check_functional(fig1, opts);
    CHECK(v.verdict == Verdict::Inconclusive);
    CHECK_FALSE(v.exact);
}

TEST_CASE("non-functional verdicts persist at larger caps") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        CheckOptions small, large;
        small.height_cap = 3;
        large.height_cap = 6;
        FunctionalityVerdict at3 = check_functional(t, small);
        if (at3.non_functional()) {
            FunctionalityVerdict at6 = check_functional(t, large);
            CHECK(at6.non_functional());
        }
    }
}

TEST_CASE("domain comparison on the fig1 family") {
    Vpt fig1 = load_vpt("fig1.vpt");
    Vpt noloop = load_vpt("fig1_noloop.vpt");

    DomainEquivVerdict same = domain_equiv(fig1, fig1);
    CHECK(same.outcome == DomainRel::Equal);

    DomainEquivVerdict diff = domain_equiv(fig1, noloop);
    REQUIRE(diff.outcome == DomainRel::Differ);
    REQUIRE(diff.witness.has_value());
    CHECK(word_text(*diff.witness, fig1.alphabet) == "c1 c2 c3 r3 r2 r1");
    CHECK(accepts(fig1, *diff.witness) != accepts(noloop, *diff.witness));
}

TEST_CASE("two empty domains are equal") {
    Vpt a = testsupport::random_vpt(11);
    Vpt b = testsupport::random_vpt(12);
    // same alphabet by construction; drop the final states
    a.final.clear();
    b.final.clear();
    CHECK(domain_equiv(a, b).outcome == DomainRel::Equal);
}

TEST_CASE("domain comparison is budget-aware") {
    Vpt fig1 = load_vpt("fig1.vpt");
    Vpt noloop = load_vpt("fig1_noloop.vpt");
    DomainEquivVerdict v = domain_equiv(fig1, noloop, 1);
    CHECK(v.outcome == DomainRel::Inconclusive);
}

TEST_CASE("the two fig1 branches are equivalent") {
    Vpt upper = load_vpt("fig1_upper.vpt");
    Vpt lower = load_vpt("fig1_lower.vpt");
    CheckOptions opts;
    opts.height_cap = 6;
    EquivVerdict v = check_equiv_functional(upper, lower, opts);
    CHECK(v.outcome == EquivOutcome::Equivalent);
    CHECK_FALSE(v.exact);  // functionality of the union was only checked up to the cap

    EquivVerdict self = check_equiv_functional(upper, upper, opts);
    CHECK(self.outcome == EquivOutcome::Equivalent);
}

TEST_CASE("equivalence is symmetric on the fixture family") {
    Vpt upper = load_vpt("fig1_upper.vpt");
    Vpt lower = load_vpt("fig1_lower.vpt");
    Vpt fig1 = load_vpt("fig1.vpt");
    Vpt noloop = load_vpt("fig1_noloop.vpt");
    CheckOptions opts;
    opts.height_cap = 6;
    CHECK(check_equiv_functional(upper, lower, opts).outcome ==
          check_equiv_functional(lower, upper, opts).outcome);
    CHECK(check_equiv_functional(fig1, noloop, opts).outcome ==
          check_equiv_functional(noloop, fig1, opts).outcome);
}

TEST_CASE("domain difference wins over output comparison") {
    // dom {c r} versus the empty domain
    Vpt a;
    a.alphabet.calls.add("c");
    a.alphabet.returns.add("r");
    a.alphabet.add_output('x');
    StateId s = a.states.add("s");
    StateId f = a.states.add("f");
    a.stack_syms.add("g");
    a.initial = {s};
    a.final = {f};
    a.call_trans.push_back({s, 0, "x", 0, s});
    a.ret_trans.push_back({s, 0, "", 0, f});

    Vpt b = a;
    b.final.clear();

    EquivVerdict v = check_equiv_functional(a, b);
    REQUIRE(v.outcome == EquivOutcome::NotEquivalent);
    REQUIRE(v.domain_witness.has_value());
    CHECK(word_text(*v.domain_witness, a.alphabet) == "c r");
}

TEST_CASE("output differences carry verified witnesses") {
    // a functional machine whose domain matches fig1_lower but whose
    // outputs end in gx instead of gh
    Vpt upper_bad;
    {
        std::string text = testsupport::read_fixture("fig1_upper.vpt");
        std::size_t at = text.find("alphabet outputs a b c d f g h");
        REQUIRE(at != std::string::npos);
        text.insert(at + std::string("alphabet outputs a b c d f g h").size(), " x");
        at = text.find("return p2 r1 / gh pop g1 -> f");
        REQUIRE(at != std::string::npos);
        text.replace(at, std::string("return p2 r1 / gh pop g1 -> f").size(),
                     "return p2 r1 / gx pop g1 -> f");
        upper_bad = std::get<Vpt>(parse_machine(text));
    }
    Vpt lower = load_vpt("fig1_lower.vpt");
    CheckOptions opts;
    opts.height_cap = 5;
    EquivVerdict v = check_equiv_functional(remap_inputs(upper_bad, lower.alphabet), lower, opts);
    REQUIRE(v.outcome == EquivOutcome::NotEquivalent);
    REQUIRE(v.output_witness.has_value());
    CHECK(v.output_witness->out1 != v.output_witness->out2);
}

TEST_CASE("non-functional inputs are rejected") {
    Vpt two = testsupport::two_output_machine();
    CHECK_THROWS_AS(check_equiv_functional(two, two), std::invalid_argument);
}

TEST_SUITE_END();
