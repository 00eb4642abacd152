#pragma once

#include "rxgi/test_suite.hpp"

#include <bitset>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxgi {

class RegexSyntaxError : public std::runtime_error {
public:
    RegexSyntaxError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

inline constexpr std::uint32_t kRepeatInfinite = 0xFFFFFFFFu;

namespace ast {

enum class Kind : std::uint8_t {
    empty,
    literal,
    any,        // '.' (everything but '\n')
    char_class, // [...], \d and friends
    line_start, // ^
    line_end,   // $ (end, or before a final '\n')
    sequence,
    alternation,
    repeat,
    group,
    lookahead,
    comment,
};

enum class GroupKind : std::uint8_t { capturing, non_capturing, named };

struct Node {
    Kind kind = Kind::empty;
    char literal = 0;
    std::bitset<256> members;        // char_class, after negation is applied
    bool negated = false;            // char_class, as written
    std::uint32_t min = 0;           // repeat
    std::uint32_t max = 0;           // repeat; kRepeatInfinite when unbounded
    bool greedy = true;              // repeat
    bool negative = false;           // lookahead
    GroupKind group = GroupKind::capturing;
    std::uint32_t capture_index = 0; // capturing and named groups, 1-based
    std::string name;                // named group label or comment text
    std::vector<std::uint32_t> children;
};

} // namespace ast

/// Parsed pattern. Immutable and safe to share between threads.
class CompiledRegex {
public:
    const std::string& source() const { return source_; }
    std::span<const ast::Node> nodes() const { return nodes_; }
    const ast::Node& node(std::uint32_t i) const { return nodes_[i]; }
    std::uint32_t root() const { return root_; }
    std::uint32_t capture_count() const { return capture_count_; }

    /// Canonical S-expression rendering of the syntax tree.
    std::string describe() const;

private:
    friend class RegexCompiler;

    std::string source_;
    std::vector<ast::Node> nodes_;
    std::uint32_t root_ = 0;
    std::uint32_t capture_count_ = 0;
};

/// Parses Python-`re`-style syntax for the supported subset. Throws
/// RegexSyntaxError for malformed or unsupported patterns.
CompiledRegex compile(std::string_view pattern);

struct MatchList {
    std::vector<Span> matches;
    std::uint64_t steps = 0;
    bool budget_exhausted = false;

    friend bool operator==(const MatchList&, const MatchList&) = default;
};

struct SearchLimits {
    std::uint64_t step_limit = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Leftmost-first backtracking scan for successive non-overlapping matches.
///
/// One step is charged per start position tried, per literal/class/anchor
/// test, per alternation branch entered and per quantifier iteration
/// decision. When the next step would exceed the limit (or the deadline
/// passes, or backtracking recursion gets too deep), the scan stops with
/// `budget_exhausted` set and the matches completed so far.
MatchList find_all(const CompiledRegex& regex, std::string_view input, std::uint64_t step_limit);
MatchList find_all(const CompiledRegex& regex, std::string_view input, const SearchLimits& limits);

struct StepCost {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_case;
    bool budget_exhausted = false;
};

/// Deterministic cost: steps of find_all summed over every case input, each
/// case run under `step_limit`.
StepCost step_cost(const CompiledRegex& regex, const TestSuite& suite, std::uint64_t step_limit);

} // namespace rxgi
