#include "rxgi/grammar.hpp"

#include <doctest.h>

using namespace rxgi;

TEST_CASE("single terminal rule has depth one")
{
    const auto g = load_grammar("<s> ::= a\n");
    CHECK(g.nonterminal_count() == 1);
    CHECK(g.min_depth(g.start()) == 1);
    CHECK(g.max_depth(g.start()) == 1);
    CHECK_FALSE(g.nullable(g.start()));
}

TEST_CASE("depth analysis on a recursive grammar")
{
    const auto g = load_grammar("<e> ::= <e> + <t> | <t>\n<t> ::= x | ( <e> )\n");
    const auto e = *g.find_nonterminal("e");
    const auto t = *g.find_nonterminal("t");
    CHECK(g.start() == e);
    CHECK(g.min_depth(t) == 1);
    CHECK(g.min_depth(e) == 2);
    CHECK(g.max_depth(e) == kUnboundedDepth);
    CHECK(g.alternative_min_depth(e, 0) == 3);
    CHECK(g.alternative_min_depth(e, 1) == 2);
    CHECK(g.alternative_max_depth(t, 0) == 1);
}

TEST_CASE("quoted terminals, escapes and the empty string")
{
    const auto g = load_grammar("<s> ::= \"a b\" | '\\'' | \"\\\\\" | \"\"\n");
    const auto alts = g.alternatives(g.start());
    REQUIRE(alts.size() == 4);
    CHECK(g.terminal(alts[0][0].id) == "a b");
    CHECK(g.terminal(alts[1][0].id) == "'");
    CHECK(g.terminal(alts[2][0].id) == "\\");
    CHECK(g.terminal(alts[3][0].id).empty());
    CHECK(g.nullable(g.start()));
}

TEST_CASE("continuation lines and comments")
{
    const auto g = load_grammar("# comment\n<s> ::= a\n    | b\n  | c\n\n<u> ::= <s>\n");
    CHECK(g.alternative_count(g.start()) == 3);
}

TEST_CASE("malformed grammars are rejected")
{
    CHECK_THROWS_AS(load_grammar(""), GrammarError);
    CHECK_THROWS_AS(load_grammar("<s> ::= a\n<s> ::= b\n"), GrammarError);
    CHECK_THROWS_AS(load_grammar("<s> ::= <missing>\n"), GrammarError);
    CHECK_THROWS_AS(load_grammar("<s> ::= a | | b\n"), GrammarError);
    CHECK_THROWS_AS(load_grammar("<s> ::= <s> a\n"), GrammarError);
    CHECK_THROWS_AS(load_grammar("<s> ::= \"abc\n"), GrammarError);
    CHECK_THROWS_AS(load_grammar("<s> a\n"), GrammarError);
    CHECK_THROWS_AS(load_grammar_file("/nonexistent/grammar.bnf"), GrammarError);
}

TEST_CASE("error messages name the line")
{
    try {
        load_grammar("<s> ::= a\n<s> ::= b\n");
        FAIL("expected GrammarError");
    } catch (const GrammarError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("built-in grammar")
{
    const auto& g = pcre_grammar();
    CHECK(g.nonterminal_name(g.start()) == "regex");
    CHECK(g.min_depth(g.start()) == 3);
    CHECK(g.find_nonterminal("class-escape").has_value());
    CHECK(g.find_nonterminal("group").has_value());
}

TEST_CASE("built-in grammar text matches the shipped file")
{
    const auto file = load_grammar_file(RXGI_SOURCE_DIR "/grammars/pcre_subset.bnf");
    const auto& g = pcre_grammar();
    REQUIRE(file.nonterminal_count() == g.nonterminal_count());
    for (std::uint32_t nt = 0; nt < g.nonterminal_count(); ++nt) {
        CHECK(file.nonterminal_name(nt) == g.nonterminal_name(nt));
        CHECK(file.alternative_count(nt) == g.alternative_count(nt));
    }
}
