#pragma once

#include "rxgi/engine.hpp"
#include "rxgi/test_suite.hpp"

#include <span>
#include <stdexcept>
#include <string>

namespace rxgi {

class BoostError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BoostConfig {
    std::string substitution_alphabet = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    bool trim_both_ends = true;
    std::size_t max_generated = 500; // cap on total suite size
    std::uint64_t step_limit = 100'000'000; // per oracle query
};

/// Expands example inputs into a suite using `seed` as the oracle.
///
/// Each base input becomes a positive case with the seed's spans. Strings
/// derived by trimming characters from either end, and by substituting each
/// alphabet character at each position, become negative cases when the seed
/// finds no match in them; derived strings it still matches are dropped.
/// Output is deduplicated and truncated to `max_generated` in priority order:
/// base inputs, trims, substitutions; then input, position, alphabet order.
TestSuite boost(const CompiledRegex& seed, std::span<const std::string> base_inputs, const BoostConfig& cfg = {});

} // namespace rxgi
