#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxgi {

class GrammarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Symbol {
    enum class Kind : std::uint8_t { terminal, nonterminal };

    Kind kind = Kind::terminal;
    std::uint32_t id = 0;

    bool is_terminal() const { return kind == Kind::terminal; }
    bool is_nonterminal() const { return kind == Kind::nonterminal; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

using Alternative = std::vector<Symbol>;

inline constexpr std::uint32_t kUnboundedDepth = std::numeric_limits<std::uint32_t>::max();

/// A context-free grammar in BNF form.
///
/// Depth is measured as derivation-tree height counting nonterminal levels
/// only: a nonterminal whose chosen alternative holds only terminals has
/// depth 1. Production order is kept exactly as written because a codon
/// selects alternative `codon % alternative_count`.
///
/// Immutable once built.
class Grammar {
public:
    std::uint32_t start() const { return start_; }
    std::size_t nonterminal_count() const { return names_.size(); }
    const std::string& nonterminal_name(std::uint32_t nt) const { return names_.at(nt); }
    std::optional<std::uint32_t> find_nonterminal(std::string_view name) const;

    std::span<const Alternative> alternatives(std::uint32_t nt) const { return rules_.at(nt); }
    std::size_t alternative_count(std::uint32_t nt) const { return rules_.at(nt).size(); }

    std::size_t terminal_count() const { return terminals_.size(); }
    const std::string& terminal(std::uint32_t id) const { return terminals_.at(id); }

    /// Smallest height of any complete derivation rooted at `nt`.
    std::uint32_t min_depth(std::uint32_t nt) const { return min_depth_.at(nt); }
    /// Largest achievable height, or kUnboundedDepth for recursive symbols.
    std::uint32_t max_depth(std::uint32_t nt) const { return max_depth_.at(nt); }
    std::uint32_t alternative_min_depth(std::uint32_t nt, std::size_t alt) const
    {
        return alt_min_depth_.at(nt).at(alt);
    }
    std::uint32_t alternative_max_depth(std::uint32_t nt, std::size_t alt) const
    {
        return alt_max_depth_.at(nt).at(alt);
    }

    /// True when `nt` derives the empty string.
    bool nullable(std::uint32_t nt) const { return nullable_.at(nt) != 0; }

    friend Grammar load_grammar(std::string_view text);

private:
    void analyse();

    std::vector<std::string> names_;
    std::vector<std::vector<Alternative>> rules_;
    std::vector<std::string> terminals_;
    std::uint32_t start_ = 0;
    std::vector<std::uint32_t> min_depth_;
    std::vector<std::uint32_t> max_depth_;
    std::vector<char> nullable_;
    std::vector<std::vector<std::uint32_t>> alt_min_depth_;
    std::vector<std::vector<std::uint32_t>> alt_max_depth_;
};

/// Parses BNF text: `<name> ::= alt | alt ...`, continuation lines starting
/// with `|`, `#` comment lines. Inside an alternative, `<name>` references a
/// nonterminal, `"..."` or `'...'` is a quoted terminal (backslash escapes the
/// quote and itself) and any other whitespace-free run is a bare terminal.
/// The first rule defines the start symbol.
Grammar load_grammar(std::string_view text);
Grammar load_grammar_file(const std::filesystem::path& path);

/// The regular-expression grammar shipped in grammars/pcre_subset.bnf.
const Grammar& pcre_grammar();
std::string_view pcre_grammar_text();

} // namespace rxgi
