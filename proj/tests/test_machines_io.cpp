#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/random_machines.hpp"
#include "vpt/textio.hpp"

using namespace vpt;
using testsupport::load_vpt;

TEST_SUITE_BEGIN("machines");

TEST_CASE("the shipped fig1 machine is well formed") {
    Vpt fig1 = load_vpt("fig1.vpt");
    CHECK(validate(fig1).ok());
    CHECK(fig1.num_states() == 8);
    CHECK(fig1.call_trans.size() == 6);
    CHECK(fig1.ret_trans.size() == 6);
    CHECK(fig1.initial.size() == 1);
    CHECK(fig1.final.size() == 1);
}

TEST_CASE("validation flags an initial state outside the state set") {
    Vpt m = load_vpt("fig1.vpt");
    m.initial.push_back(99);
    ValidationReport report = validate(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("initial") != std::string::npos);
}

TEST_CASE("validation flags an undeclared stack symbol") {
    Vpt m = load_vpt("fig1.vpt");
    m.call_trans[0].push = 77;
    ValidationReport report = validate(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("stack symbol") != std::string::npos);
}

TEST_CASE("validation flags output words outside the output alphabet") {
    Vpt m = load_vpt("fig1.vpt");
    m.ret_trans[0].out = "zz";
    CHECK_FALSE(validate(m).ok());
}

TEST_CASE("validation flags call/return symbol overlap") {
    Vpt m = load_vpt("fig1.vpt");
    m.alphabet.calls.add("r1");
    CHECK_FALSE(validate(m).ok());
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_machine("nonsense\n"), ParseError);

    try {
        parse_machine("vpt\nalphabet calls c\nstates a\ncall b c / eps push g -> a\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("undeclared state 'b'") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_machine("vpt\nstates a a\n"), ParseError);           // duplicate
    CHECK_THROWS_AS(parse_machine("vpt\nalphabet outputs ab\n"), ParseError);  // multi-char
    CHECK_THROWS_AS(parse_machine(""), ParseError);
}

TEST_CASE("eps denotes the empty output") {
    Vpt fig1 = load_vpt("fig1.vpt");
    bool saw_empty = false;
    for (const auto& t : fig1.ret_trans)
        if (t.out.empty()) saw_empty = true;
    CHECK(saw_empty);
}

TEST_CASE("round trip on the shipped fixtures") {
    for (const char* name : {"fig1.vpt", "fig1_bad.vpt", "fig1_upper.vpt", "fig1_lower.vpt",
                             "fig1_noloop.vpt", "shrink1.vpt"}) {
        Vpt m = load_vpt(name);
        Machine again = parse_machine(serialize(m));
        CHECK(std::get<Vpt>(again) == m);
    }
}

TEST_CASE("round trip on random machines, vpa and fst included") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        CHECK(std::get<Vpt>(parse_machine(serialize(t))) == t);

        Vpa a = vpa_of(t);
        CHECK(std::get<Vpa>(parse_machine(serialize(a))) == a);

        Fst f = testsupport::random_fst(seed);
        CHECK(std::get<Fst>(parse_machine(serialize(f))) == f);
    }
}

TEST_CASE("word parsing and rendering") {
    Vpt fig1 = load_vpt("fig1.vpt");
    InputWord w = parse_word("c1 c2 c3 r3 r2 r1", fig1.alphabet);
    CHECK(w.size() == 6);
    CHECK(word_text(w, fig1.alphabet) == "c1 c2 c3 r3 r2 r1");
    CHECK(parse_word("", fig1.alphabet).empty());
    CHECK_THROWS_AS(parse_word("c1 nope", fig1.alphabet), ParseError);
}

TEST_CASE("disjoint union preserves both machines") {
    Vpt upper = load_vpt("fig1_upper.vpt");
    Vpt lower = load_vpt("fig1_lower.vpt");
    Vpt both = disjoint_union(upper, lower);
    CHECK(validate(both).ok());
    CHECK(both.num_states() == upper.num_states() + lower.num_states());
    CHECK(both.initial.size() == 2);
}

TEST_CASE("remap_inputs aligns symbol ids by name") {
    Vpt fig1 = load_vpt("fig1.vpt");
    // same machine with permuted alphabet declarations
    std::string text = serialize(fig1);
    std::size_t at = text.find("alphabet calls c1 c2 c3");
    REQUIRE(at != std::string::npos);
    text.replace(at, std::string("alphabet calls c1 c2 c3").size(), "alphabet calls c3 c2 c1");
    Vpt permuted = std::get<Vpt>(parse_machine(text));
    CHECK_FALSE(permuted == fig1);
    Vpt remapped = remap_inputs(permuted, fig1.alphabet);
    CHECK(remapped.alphabet.calls == fig1.alphabet.calls);
    for (std::size_t i = 0; i < remapped.call_trans.size(); ++i)
        CHECK(fig1.alphabet.calls.name(remapped.call_trans[i].call) ==
              permuted.alphabet.calls.name(permuted.call_trans[i].call));

    Vpt other = testsupport::random_vpt(7);
    CHECK_THROWS_AS(remap_inputs(other, fig1.alphabet), std::invalid_argument);
}

TEST_SUITE_END();
