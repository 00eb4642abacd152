#include "rxgi/engine.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace rxgi;

namespace {

std::vector<Span> spans(std::string_view pattern, std::string_view input)
{
    const auto m = find_all(compile(pattern), input, 10'000'000);
    REQUIRE_FALSE(m.budget_exhausted);
    return m.matches;
}

using V = std::vector<Span>;

} // namespace

TEST_CASE("MAC address search")
{
    CHECK(spans("([0-9A-Fa-f]{2}[:-]){5}([0-9A-Fa-f]{2})", "eth0 119.63.193.196(5c:0a:5b:63:4a:82):4399") ==
          V{{20, 37}});
}

TEST_CASE("literals, classes and dot")
{
    CHECK(spans("ab", "xabab") == V{{1, 3}, {3, 5}});
    CHECK(spans("[a-c]", "dcb") == V{{1, 2}, {2, 3}});
    CHECK(spans("[^a-c]", "dcb") == V{{0, 1}});
    CHECK(spans(".", "a\nb") == V{{0, 1}, {2, 3}});
    CHECK(spans("\\d+", "ab12c345") == V{{2, 4}, {5, 8}});
    CHECK(spans("\\W", "a b") == V{{1, 2}});
    CHECK(spans("\\s", "a\tb") == V{{1, 2}});
    CHECK(spans("[]a]", "]") == V{{0, 1}});
    CHECK(spans("[a-]", "-") == V{{0, 1}});
    CHECK(spans("[\\d_]", "_") == V{{0, 1}});
    CHECK(spans("\\.", "a.b") == V{{1, 2}});
    CHECK(spans("\\n", "a\nb") == V{{1, 2}});
}

TEST_CASE("anchors")
{
    CHECK(spans("^a", "aa") == V{{0, 1}});
    CHECK(spans("a$", "aa") == V{{1, 2}});
    CHECK(spans("a$", "aa\n") == V{{1, 2}});
    CHECK(spans("a$", "a\n\n").empty());
    CHECK(spans("^$", "") == V{{0, 0}});
}

TEST_CASE("greedy and lazy quantifiers")
{
    CHECK(spans("a+", "aaa") == V{{0, 3}});
    CHECK(spans("a+?", "aaa") == V{{0, 1}, {1, 2}, {2, 3}});
    CHECK(spans("a{2}", "aaaaa") == V{{0, 2}, {2, 4}});
    CHECK(spans("a{2,}", "aaaaa") == V{{0, 5}});
    CHECK(spans("a{,2}b", "aaab") == V{{1, 4}});
    CHECK(spans("a{2,3}?", "aaaaa") == V{{0, 2}, {2, 4}});
    CHECK(spans("a{,}", "aa") == V{{0, 2}, {2, 2}});
    CHECK(spans("<.*>", "<a><b>") == V{{0, 6}});
    CHECK(spans("<.*?>", "<a><b>") == V{{0, 3}, {3, 6}});
}

TEST_CASE("empty matches advance by one")
{
    CHECK(spans("a*", "baa") == V{{0, 0}, {1, 3}, {3, 3}});
    CHECK(spans("", "ab") == V{{0, 0}, {1, 1}, {2, 2}});
}

TEST_CASE("alternation is ordered")
{
    CHECK(spans("a|ab", "ab") == V{{0, 1}});
    CHECK(spans("ab|a", "ab") == V{{0, 2}});
    CHECK(spans("(a|ab)c", "abc") == V{{0, 3}});
}

TEST_CASE("groups")
{
    CHECK(spans("(?:ab)+", "ababa") == V{{0, 4}});
    CHECK(spans("(?P<x>a)b", "ab") == V{{0, 2}});
    CHECK(spans("a(?#note)b", "ab") == V{{0, 2}});
    CHECK(compile("(a)(?:b)(?P<n>c)").capture_count() == 2);
}

TEST_CASE("lookahead is zero-width")
{
    CHECK(spans("a(?=b)", "abac") == V{{0, 1}});
    CHECK(spans("a(?!b)", "abac") == V{{2, 3}});
    CHECK(spans("(?=a)", "ba") == V{{1, 1}});
    CHECK(spans("(?=.{1,3}$)a+", "aaaaa") == V{{2, 5}});
}

TEST_CASE("empty iterations beyond the minimum fail")
{
    CHECK(spans("(a*)*b", "aab") == V{{0, 3}});
    CHECK(spans("(a?)+", "") == V{{0, 0}});
    const auto m = find_all(compile("(|a)*"), "aa", 1000);
    CHECK_FALSE(m.budget_exhausted);
}

TEST_CASE("syntax errors carry positions")
{
    auto error_at = [](std::string_view p) -> std::optional<std::size_t> {
        try {
            compile(p);
        } catch (const RegexSyntaxError& e) {
            return e.position();
        }
        return std::nullopt;
    };
    CHECK(error_at("(ab") == 0u);
    CHECK(error_at("ab)") == 2u);
    CHECK(error_at("*a") == 0u);
    CHECK(error_at("a**") == 2u);
    CHECK(error_at("^*") == 0u);
    CHECK(error_at("a{3,2}") == 1u);
    CHECK(error_at("a{99999999999}") == 1u);
    CHECK(error_at("[b-a]") == 1u);
    CHECK(error_at("[\\d-z]") == 1u);
    CHECK(error_at("[ab") == 0u);
    CHECK(error_at("\\q") == 0u);
    CHECK(error_at("\\1") == 0u);
    CHECK(error_at("a\\") == 1u);
    CHECK(error_at("(?<=a)b") == 0u);
    CHECK(error_at("(?x)") == 0u);
    CHECK(error_at("(?P<1a>x)") == 4u);
    CHECK(error_at("(?P<a>x)(?P<a>y)") == 12u);
    CHECK(error_at("{2}") == 0u);
    CHECK_FALSE(error_at("a{").has_value());
    CHECK_FALSE(error_at("a{x}").has_value());
    CHECK_FALSE(error_at("}").has_value());
}

TEST_CASE("lone brace is a literal")
{
    CHECK(spans("a{", "a{") == V{{0, 2}});
    CHECK(spans("{x}", "{x}") == V{{0, 3}});
}

TEST_CASE("describe")
{
    CHECK(compile(".X(.+)+XX").describe() ==
          "(seq any 'X' (repeat 1 inf greedy (group 1 (repeat 1 inf greedy any))) 'X' 'X')");
    CHECK(compile("a|b?").describe() == "(alt 'a' (repeat 0 1 greedy 'b'))");
    CHECK(compile("").describe() == "empty");
    CHECK(compile("^[ab]$").describe() == "(seq bol class[a-b] eol)");
}

TEST_CASE("step counting")
{
    // start 0, test 'a' (match), start 1, test 'a' (fails at end of input)
    CHECK(find_all(compile("a"), "a", 100).steps == 4);
    const auto re = compile("(a|b)*c");
    const auto first = find_all(re, "ababab", 100000);
    const auto second = find_all(re, "ababab", 100000);
    CHECK(first == second);
    CHECK(first.steps > 0);
    CHECK_THROWS_AS(find_all(re, "ab", 0), std::invalid_argument);
}

TEST_CASE("budget exhaustion is reported in band")
{
    const auto re = compile("(a+)+b");
    const std::string input(30, 'a');
    const auto m = find_all(re, input, 5000);
    CHECK(m.budget_exhausted);
    CHECK(m.steps == 5000);
    CHECK(m.matches.empty());
}

TEST_CASE("raising the budget never removes matches")
{
    const auto re = compile("a(b|c)*d|x");
    const std::string input = "abcbd x abbbbd xx acd";
    const auto full = find_all(re, input, 1'000'000);
    REQUIRE_FALSE(full.budget_exhausted);
    std::vector<Span> previous;
    for (std::uint64_t limit = 1; limit <= full.steps; limit += 3) {
        const auto m = find_all(re, input, limit);
        REQUIRE(m.matches.size() >= previous.size());
        CHECK(std::equal(previous.begin(), previous.end(), m.matches.begin()));
        CHECK(std::equal(m.matches.begin(), m.matches.end(), full.matches.begin()));
        previous = m.matches;
    }
}

TEST_CASE("deep recursion is bounded")
{
    const std::string input(100000, 'a');
    const auto m = find_all(compile("(a)*b"), input, 1'000'000'000);
    CHECK(m.budget_exhausted);
}

TEST_CASE("deadline stops the search")
{
    const auto re = compile("(a+)+b");
    const std::string input(40, 'a');
    const SearchLimits limits{UINT64_MAX, std::chrono::steady_clock::now()};
    const auto m = find_all(re, input, limits);
    CHECK(m.budget_exhausted);
    CHECK(m.steps <= 1024);
}

TEST_CASE("catastrophic backtracking grows with input")
{
    const auto bad = compile(".X(.+)+XX");
    const auto good = compile(".X(.+)XX");
    auto steps = [](const CompiledRegex& re, int n) {
        return find_all(re, "bbbbX" + std::string(n, 'c') + "XaZ", UINT64_MAX).steps;
    };
    CHECK(steps(bad, 12) > 10 * steps(bad, 8));
    CHECK(steps(good, 12) < 3 * steps(good, 8));
}

TEST_CASE("step cost over a suite")
{
    TestSuite suite;
    suite.seed = "a";
    suite.cases = {{"a", {{0, 1}}, CaseKind::positive}, {"b", {}, CaseKind::negative}};
    const auto c = step_cost(compile("a"), suite, 100);
    CHECK(c.per_case.size() == 2);
    CHECK(c.total == c.per_case[0] + c.per_case[1]);
    CHECK_FALSE(c.budget_exhausted);
}
