#pragma once

#include "rxgi/derivation.hpp"
#include "rxgi/grammar.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace rxgi {

class SeedParseError : public std::runtime_error {
public:
    SeedParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message), position_(position)
    {
    }

    /// Offset of the first character that cannot extend any derivation
    /// (equal to the input length when the input is a proper prefix).
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct SeedParse {
    DerivationTree tree;
    Genome genome;
    std::string source;
};

/// Reverse mapping: derives `text` from the grammar's start symbol and
/// synthesises the canonical genome that maps back to the same tree.
///
/// Ambiguity is resolved top-down: each nonterminal takes the lowest-indexed
/// alternative admitting a complete derivation; within an alternative,
/// earlier symbols take the longest span that still lets the rest complete.
SeedParse parse_regex_to_tree(std::string_view text, const Grammar& grammar);

} // namespace rxgi
