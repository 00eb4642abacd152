#pragma once

#include "rxgi/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace corpus {

/// Random phenotype of the built-in grammar with all repeat counts below 10.
std::string grammar_pattern(rxgi::Rng& rng);

/// Random small pattern over the letters a, b, c.
std::string abc_pattern(rxgi::Rng& rng);

std::string random_input(rxgi::Rng& rng, const std::string& alphabet, std::size_t max_length);

/// Input alphabet for a pattern: its printable characters plus a few extras.
std::string alphabet_for(const std::string& pattern);

struct OracleComparison {
    std::size_t compared = 0;         // (pattern, input) cases checked
    std::size_t patterns = 0;         // patterns compiled by both sides
    std::size_t rejected = 0;         // patterns both sides reject
    std::size_t skipped = 0;          // engine ran out of budget
    std::size_t syntax_disagreements = 0;
    std::size_t mismatches = 0;
    std::vector<std::string> failures; // first few, for diagnostics
};

/// Compares the engine with the reference matcher on `cases` random
/// (pattern, input) pairs, half from each generator.
OracleComparison compare_with_oracle(std::size_t cases, std::uint64_t seed);

} // namespace corpus
