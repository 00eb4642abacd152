#include "rxgi/boosting.hpp"

#include <unordered_set>

namespace rxgi {

TestSuite boost(const CompiledRegex& seed, std::span<const std::string> base_inputs, const BoostConfig& cfg)
{
    if (base_inputs.empty())
        throw BoostError("boosting needs at least one base input");
    if (cfg.substitution_alphabet.empty())
        throw BoostError("substitution alphabet is empty");
    if (cfg.max_generated < base_inputs.size())
        throw BoostError("max_generated is smaller than the number of base inputs");

    TestSuite suite;
    suite.seed = seed.source();
    std::unordered_set<std::string> seen;

    for (const auto& input : base_inputs) {
        auto m = find_all(seed, input, cfg.step_limit);
        if (m.budget_exhausted)
            throw BoostError("seed exhausted its step budget on base input '" + input + "'");
        if (m.matches.empty())
            throw BoostError("seed '" + seed.source() + "' matches nothing in base input '" + input + "'");
        if (seen.insert(input).second)
            suite.cases.push_back({input, std::move(m.matches), CaseKind::positive});
    }

    auto full = [&] { return suite.cases.size() >= cfg.max_generated; };
    auto offer = [&](std::string candidate) {
        if (full() || seen.contains(candidate))
            return;
        const auto m = find_all(seed, candidate, cfg.step_limit);
        if (m.budget_exhausted || !m.matches.empty())
            return;
        seen.insert(candidate);
        suite.cases.push_back({std::move(candidate), {}, CaseKind::negative});
    };

    for (const auto& input : base_inputs) {
        for (std::size_t k = 1; k <= input.size() && !full(); ++k)
            offer(input.substr(k));
        if (cfg.trim_both_ends)
            for (std::size_t k = 1; k <= input.size() && !full(); ++k)
                offer(input.substr(0, input.size() - k));
    }
    for (const auto& input : base_inputs) {
        for (std::size_t pos = 0; pos < input.size() && !full(); ++pos) {
            for (const char c : cfg.substitution_alphabet) {
                if (c == input[pos])
                    continue;
                std::string variant = input;
                variant[pos] = c;
                offer(std::move(variant));
            }
        }
    }
    return suite;
}

} // namespace rxgi
