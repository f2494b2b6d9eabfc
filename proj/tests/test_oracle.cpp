#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/random_machines.hpp"
#include "vpt/oracle.hpp"
#include "vpt/semantics.hpp"
#include "vpt/textio.hpp"

using namespace vpt;
using testsupport::fig1_domain_word;
using testsupport::load_vpt;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("fig1 domain enumeration in length order") {
    Vpt fig1 = load_vpt("fig1.vpt");
    std::vector<InputWord> words = enumerate_domain(fig1, 9);
    REQUIRE(words.size() == 3);
    for (std::size_t n = 0; n <= 2; ++n) CHECK(words[n] == fig1_domain_word(fig1, n));

    // the n = 3 word has length exactly 10
    words = enumerate_domain(fig1, 10);
    REQUIRE(words.size() == 4);
    CHECK(words[3] == fig1_domain_word(fig1, 3));
}

TEST_CASE("enumeration edge cases") {
    Vpt empty = load_vpt("fig1.vpt");
    empty.final.clear();
    CHECK(enumerate_domain(empty, 8).empty());

    Vpt two = testsupport::two_output_machine();  // initial == final
    std::vector<InputWord> words = enumerate_domain(two, 0);
    REQUIRE(words.size() == 1);
    CHECK(words[0].empty());

    Vpt fig1 = load_vpt("fig1.vpt");
    CHECK(enumerate_domain(fig1, 0).empty());
    CHECK(enumerate_domain(fig1, 3).empty());
}

TEST_CASE("enumerated words are accepted, well nested and sorted") {
    for (std::uint64_t seed = 70; seed <= 110; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        std::vector<InputWord> words = enumerate_domain(t, 7);
        for (std::size_t i = 0; i < words.size(); ++i) {
            CHECK(is_well_nested(words[i]));
            CHECK(accepts(t, words[i]));
            if (i > 0) {
                bool ordered = words[i - 1].size() < words[i].size() ||
                               (words[i - 1].size() == words[i].size() && words[i - 1] < words[i]);
                CHECK(ordered);
            }
        }
    }
}

TEST_CASE("the pruned enumerator matches generate-and-test") {
    for (std::uint64_t seed = 200; seed <= 230; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        CHECK(enumerate_domain(t, 6, /*naive=*/false) == enumerate_domain(t, 6, /*naive=*/true));
    }
}

TEST_CASE("brute functionality on the fig1 family") {
    Vpt fig1 = load_vpt("fig1.vpt");
    OracleReport r = brute_functional(fig1, 14);
    CHECK(r.verdict == OracleVerdict::Functional);
    CHECK(r.checked_count == 6);
    CHECK(r.max_len == 14);

    Vpt bad = load_vpt("fig1_bad.vpt");
    r = brute_functional(bad, 4);
    REQUIRE(r.verdict == OracleVerdict::NonFunctional);
    REQUIRE(r.witness.has_value());
    CHECK(word_text(r.witness->input, bad.alphabet) == "c1 c3 r3 r1");
    CHECK(produces(bad, r.witness->input, r.witness->out1));
    CHECK(produces(bad, r.witness->input, r.witness->out2));
    CHECK(r.witness->out1 != r.witness->out2);

    Vpt empty = fig1;
    empty.final.clear();
    CHECK(brute_functional(empty, 8).verdict == OracleVerdict::Functional);
}

TEST_CASE("non-functional verdicts are monotone in the bound") {
    for (std::uint64_t seed = 240; seed <= 300; ++seed) {
        Vpt t = testsupport::random_vpt(seed);
        OracleReport small = brute_functional(t, 8);
        if (small.verdict == OracleVerdict::NonFunctional) {
            OracleReport large = brute_functional(t, 12);
            CHECK(large.verdict == OracleVerdict::NonFunctional);
            CHECK(large.witness->input.size() <= small.witness->input.size());
        }
    }
}

TEST_CASE("brute equivalence on the fig1 family") {
    Vpt upper = load_vpt("fig1_upper.vpt");
    Vpt lower = load_vpt("fig1_lower.vpt");
    OracleReport r = brute_equiv(upper, lower, 14);
    CHECK(r.verdict == OracleVerdict::EquivUpTo);
    CHECK(r.checked_count == 6);

    Vpt fig1 = load_vpt("fig1.vpt");
    r = brute_equiv(fig1, fig1, 10);
    CHECK(r.verdict == OracleVerdict::EquivUpTo);

    Vpt noloop = load_vpt("fig1_noloop.vpt");
    r = brute_equiv(fig1, noloop, 8);
    REQUIRE(r.verdict == OracleVerdict::Differ);
    REQUIRE(r.domain_witness.has_value());
    CHECK(word_text(*r.domain_witness, fig1.alphabet) == "c1 c2 c3 r3 r2 r1");
}

TEST_CASE("brute equivalence distinguishes outputs on equal domains") {
    Vpt lower = load_vpt("fig1_lower.vpt");
    std::string text = testsupport::read_fixture("fig1_lower.vpt");
    std::size_t at = text.find("call i c1 / dfc push g1 -> q1");
    REQUIRE(at != std::string::npos);
    text.replace(at, std::string("call i c1 / dfc push g1 -> q1").size(),
                 "call i c1 / dfd push g1 -> q1");
    Vpt tweaked = std::get<Vpt>(parse_machine(text));

    OracleReport r = brute_equiv(lower, tweaked, 6);
    REQUIRE(r.verdict == OracleVerdict::Differ);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->out1 != r.witness->out2);
    CHECK(produces(lower, r.witness->input, r.witness->out1));
    CHECK(produces(tweaked, r.witness->input, r.witness->out2));
}

TEST_CASE("resource caps surface as explicit errors") {
    Vpt two = testsupport::two_output_machine();
    OracleOptions opts;
    opts.max_outputs_per_word = 1;
    CHECK_THROWS_AS(brute_functional(two, 12, opts), ResourceLimitError);
}

TEST_SUITE_END();
