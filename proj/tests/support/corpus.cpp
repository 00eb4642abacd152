#include "corpus.hpp"

#include "oracle.hpp"
#include "rxgi/engine.hpp"
#include "rxgi/evolution.hpp"

#include <set>
#include <sstream>

namespace corpus {

using rxgi::Rng;

namespace {

bool has_big_count(const std::string& p)
{
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (std::isdigit(static_cast<unsigned char>(p[i])) && std::isdigit(static_cast<unsigned char>(p[i + 1])))
            return true;
    return false;
}

std::string pick(Rng& rng, const std::vector<std::string>& options) { return options[rng.index(options.size())]; }

std::string abc_atom(Rng& rng, int depth);

std::string abc_seq(Rng& rng, int depth)
{
    std::string out;
    const auto n = 1 + rng.index(3);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(0.08)) {
            out += rng.bernoulli(0.5) ? "^" : "$";
            continue;
        }
        auto atom = abc_atom(rng, depth);
        if (rng.bernoulli(0.35)) {
            atom += pick(rng, {"*", "+", "?", "{2}", "{1,2}", "{,2}", "{2,}", "{0}", "{,}"});
            if (rng.bernoulli(0.3))
                atom += "?";
        }
        out += atom;
    }
    return out;
}

std::string abc_alt(Rng& rng, int depth)
{
    auto out = abc_seq(rng, depth);
    while (rng.bernoulli(0.25))
        out += "|" + (rng.bernoulli(0.1) ? std::string() : abc_seq(rng, depth));
    return out;
}

std::string abc_atom(Rng& rng, int depth)
{
    if (depth <= 0 || rng.bernoulli(0.55))
        return pick(rng, {"a", "b", "c", "a", "b", ".", "[ab]", "[^a]", "[a-c]", "\\w", "\\n"});
    const auto inner = abc_alt(rng, depth - 1);
    return pick(rng, {"(", "(?:", "(?=", "(?!", "(?P<g>"}) + inner + ")";
}

} // namespace

std::string grammar_pattern(Rng& rng)
{
    const auto& g = rxgi::pcre_grammar();
    for (;;) {
        const auto depth = 3 + static_cast<std::uint32_t>(rng.index(7));
        auto text = rxgi::tree_to_phenotype(rxgi::grow_tree(g, g.start(), depth, rng), g);
        if (!has_big_count(text) && text.size() <= 40)
            return text;
    }
}

std::string abc_pattern(Rng& rng) { return abc_alt(rng, 2); }

std::string random_input(Rng& rng, const std::string& alphabet, std::size_t max_length)
{
    const auto n = rng.index(max_length + 1);
    std::string s;
    for (std::size_t i = 0; i < n; ++i)
        s += alphabet[rng.index(alphabet.size())];
    return s;
}

std::string alphabet_for(const std::string& pattern)
{
    std::set<char> chars{'a', '1', ' ', '_', '\n', 'Z'};
    for (const char c : pattern)
        if (c >= 32 && c < 127)
            chars.insert(c);
    return std::string(chars.begin(), chars.end());
}

OracleComparison compare_with_oracle(std::size_t cases, std::uint64_t seed)
{
    constexpr std::size_t kInputsPerPattern = 5;
    constexpr std::uint64_t kStepLimit = 50'000'000;
    Rng rng(seed);
    OracleComparison out;
    bool from_grammar = true;
    while (out.compared < cases) {
        const auto pattern = from_grammar ? grammar_pattern(rng) : abc_pattern(rng);
        const auto alphabet = from_grammar ? alphabet_for(pattern) : std::string("abc\n");
        from_grammar = !from_grammar;

        std::optional<rxgi::CompiledRegex> compiled;
        try {
            compiled = rxgi::compile(pattern);
        } catch (const rxgi::RegexSyntaxError&) {
        }
        const auto reference = oracle::parse(pattern);
        if (compiled.has_value() != reference.has_value()) {
            ++out.syntax_disagreements;
            if (out.failures.size() < 10)
                out.failures.push_back("syntax: /" + pattern + "/ engine " + (compiled ? "accepts" : "rejects"));
            continue;
        }
        if (!compiled) {
            ++out.rejected;
            continue;
        }
        ++out.patterns;
        for (std::size_t k = 0; k < kInputsPerPattern && out.compared < cases; ++k) {
            const auto input = random_input(rng, alphabet, 10);
            const auto got = rxgi::find_all(*compiled, input, kStepLimit);
            if (got.budget_exhausted) {
                ++out.skipped;
                continue;
            }
            ++out.compared;
            const auto want = oracle::find_all(*reference, input);
            bool same = got.matches.size() == want.size();
            for (std::size_t i = 0; same && i < want.size(); ++i)
                same = got.matches[i].start == want[i].first && got.matches[i].end == want[i].second;
            if (!same) {
                ++out.mismatches;
                if (out.failures.size() < 10) {
                    std::ostringstream msg;
                    msg << "/" << pattern << "/ on \"" << input << "\": engine";
                    for (const auto& s : got.matches)
                        msg << " (" << s.start << "," << s.end << ")";
                    msg << " oracle";
                    for (const auto& [a, b] : want)
                        msg << " (" << a << "," << b << ")";
                    out.failures.push_back(msg.str());
                }
            }
        }
    }
    return out;
}

} // namespace corpus
