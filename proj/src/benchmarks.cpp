#include "rxgi/benchmarks.hpp"

#include "rxgi/engine.hpp"

#include <algorithm>

namespace rxgi {

namespace {

const std::vector<Problem>& problems()
{
    static const std::vector<Problem> all = {
        {"mac_address_search",
         "([0-9A-Fa-f]{2}[:-]){5}([0-9A-Fa-f]{2})",
         {"eth0 119.63.193.196(5c:0a:5b:63:4a:82):4399",
          "hw 00-1A-2B-3C-4D-5E and aa:bb:cc:dd:ee:ff",
          "wlan0 ether 3c:22:fb:0e:91:7d txqueuelen 1000"},
         "Extraction; several inputs carry more than one address."},
        {"mac_address_validation",
         "^[0-9A-F]{12}$",
         {"5C0A5B634A82", "00FFA1B2C3D4"},
         "Validation; upper-case hex, no separators."},
        {"email_validation",
         "^(?=.{1,254}$)(?=.{1,64}@)[-!#$%&'*+0-9=?A-Z^_`a-z{|}~]+(\\.[-!#$%&'*+0-9=?A-Z^_`a-z{|}~]+)*"
         "@[A-Za-z0-9]([A-Za-z0-9-]{0,61}[A-Za-z0-9])?(\\.[A-Za-z0-9]([A-Za-z0-9-]{0,61}[A-Za-z0-9])?)*$",
         {"user@example.com", "first.last+tag@mail.example-host.org", "x!#$%&'*+=?^_`{|}~@a.io"},
         "Validation; base inputs are a curated set of valid addresses."},
        {"iso8601",
         "^\\d{4,}-[01]\\d-[0-3]\\dT[0-2]\\d:[0-5]\\d:[0-5]\\d\\.\\d+(?:[+-][0-2]\\d:[0-5]\\d|Z)$",
         {"2016-12-09T08:21:15.9+00:00", "2017-01-31T23:59:59.123Z"},
         "Validation of date-time strings."},
        {"scientific_number",
         "^\\s*(-|\\+)?(\\d+|(\\d*(\\.\\d*)))([eE][+-]?\\d+)?\\s*$",
         {"230.234E-10", " -12.5e+3 ", ".4536", "+7"},
         "Validation; leading/trailing whitespace and a fraction without leading zero must stay accepted."},
        {"d3_interpolate_number",
         "[-+]?(?:\\d+\\.?\\d*|\\d*\\.?\\d+)(?:[eE][-+]?\\d+)?",
         {"translate(10.5,-2e3) scale(.25)", "rgb(12, 34.5, 6e-1)"},
         "Extraction of every number embedded in a string."},
        {"catastrophic_qt3ts",
         ".X(.+)+XX",
         {"bbbbXcyXXaaa", "abXcdXXef"},
         "Nested quantifiers backtrack exponentially on near misses."},
        {"catastrophic_csv_p11",
         "^(.*?,){11}P",
         {"1,2,3,4,5,6,7,8,9,10,11,P", "10,20,30,40,50,60,70,80,90,100,110,P"},
         "Matches when the 12th comma-separated field starts with P."},
        {"grammar_parse_rule",
         "(?P<rulename><\\S+>)\\s*::=\\s*(?P<production>(?:(?=\\#)\\#[^\\r\\n]*|(?!<\\S+>\\s*::=).+?)+)",
         {"<string> ::= <letter>|<letter><string>", "<digit> ::= 0 | 1 | 2 | 3"},
         "Extraction of a BNF rule; group contents are not scored."},
    };
    return all;
}

} // namespace

std::vector<std::string> list_problems()
{
    std::vector<std::string> names;
    for (const auto& p : problems())
        names.push_back(p.name);
    return names;
}

Problem load_problem(std::string_view name)
{
    const auto& all = problems();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Problem& p) { return p.name == name; });
    if (it == all.end())
        throw UnknownProblemError("unknown problem '" + std::string(name) + "'");
    return *it;
}

TestSuite problem_suite(const Problem& problem, const BoostConfig& cfg)
{
    return boost(compile(problem.seed), problem.base_inputs, cfg);
}

} // namespace rxgi
