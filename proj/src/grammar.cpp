#include "rxgi/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace rxgi {

extern const char* const kEmbeddedPcreGrammar;

namespace {

struct RawToken {
    bool nonterminal = false;
    std::string text;
};

using RawAlternative = std::vector<RawToken>;

struct RawRule {
    std::string name;
    std::vector<RawAlternative> alternatives;
    std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& what)
{
    throw GrammarError("grammar line " + std::to_string(line) + ": " + what);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Length of a `<name>` reference starting at s[i], or 0 if there is none.
std::size_t nonterminal_ref_length(std::string_view s, std::size_t i)
{
    if (i >= s.size() || s[i] != '<')
        return 0;
    std::size_t j = i + 1;
    while (j < s.size() && s[j] != '>' && s[j] != '<' && !is_space(s[j]) && s[j] != '|' && s[j] != '"')
        ++j;
    if (j >= s.size() || s[j] != '>' || j == i + 1)
        return 0;
    return j - i + 1;
}

// Splits the right-hand side of a rule into alternatives. A leading `|`
// (continuation line) opens a new alternative like any other separator.
void tokenize_alternatives(std::string_view rhs, std::size_t line, std::vector<RawAlternative>& out,
                           bool continuation)
{
    RawAlternative current;
    bool open = !continuation;
    auto close = [&] {
        if (current.empty())
            fail(line, "empty alternative (write \"\" for the empty string)");
        out.push_back(std::move(current));
        current.clear();
    };

    std::size_t i = 0;
    while (i < rhs.size()) {
        const char c = rhs[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (c == '|') {
            if (open)
                close();
            open = true;
            ++i;
            continue;
        }
        if (!open)
            fail(line, "continuation line must start with '|'");
        if (c == '"' || c == '\'') {
            std::string text;
            std::size_t j = i + 1;
            bool closed = false;
            while (j < rhs.size()) {
                if (rhs[j] == '\\' && j + 1 < rhs.size() && (rhs[j + 1] == c || rhs[j + 1] == '\\')) {
                    text += rhs[j + 1];
                    j += 2;
                } else if (rhs[j] == c) {
                    closed = true;
                    ++j;
                    break;
                } else {
                    text += rhs[j++];
                }
            }
            if (!closed)
                fail(line, "unterminated quoted terminal");
            current.push_back({false, std::move(text)});
            i = j;
            continue;
        }
        if (const auto len = nonterminal_ref_length(rhs, i); len != 0) {
            current.push_back({true, std::string(rhs.substr(i + 1, len - 2))});
            i += len;
            continue;
        }
        std::size_t j = i;
        while (j < rhs.size() && !is_space(rhs[j]) && rhs[j] != '|' && rhs[j] != '"' && rhs[j] != '\'' &&
               (j == i || nonterminal_ref_length(rhs, j) == 0))
            ++j;
        current.push_back({false, std::string(rhs.substr(i, j - i))});
        i = j;
    }
    if (open)
        close();
}

} // namespace

std::optional<std::uint32_t> Grammar::find_nonterminal(std::string_view name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<std::uint32_t>(it - names_.begin());
}

Grammar load_grammar(std::string_view text)
{
    std::vector<RawRule> raw;
    std::map<std::string, std::size_t, std::less<>> index;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#')
            continue;

        if (line[first] == '|') {
            if (raw.empty())
                fail(line_no, "continuation line before any rule");
            tokenize_alternatives(line.substr(first), line_no, raw.back().alternatives, true);
            continue;
        }

        const auto name_len = nonterminal_ref_length(line, first);
        if (first != 0 || name_len == 0)
            fail(line_no, "expected '<name> ::= ...'");
        std::string name(line.substr(1, name_len - 2));
        auto rest = line.substr(name_len);
        const auto def = rest.find_first_not_of(" \t");
        if (def == std::string_view::npos || rest.substr(def, 3) != "::=")
            fail(line_no, "expected '::=' after <" + name + ">");
        if (index.contains(name))
            fail(line_no, "duplicate rule definition for <" + name + ">");
        index.emplace(name, raw.size());
        raw.push_back({name, {}, line_no});
        tokenize_alternatives(rest.substr(def + 3), line_no, raw.back().alternatives, false);
    }

    if (raw.empty())
        throw GrammarError("grammar defines no rules");

    Grammar g;
    std::map<std::string, std::uint32_t, std::less<>> terminal_ids;
    for (const auto& rule : raw)
        g.names_.push_back(rule.name);
    for (const auto& rule : raw) {
        std::vector<Alternative> alts;
        for (const auto& raw_alt : rule.alternatives) {
            Alternative alt;
            for (const auto& tok : raw_alt) {
                if (tok.nonterminal) {
                    const auto it = index.find(tok.text);
                    if (it == index.end())
                        fail(rule.line, "undefined nonterminal <" + tok.text + "> referenced from <" + rule.name + ">");
                    alt.push_back({Symbol::Kind::nonterminal, static_cast<std::uint32_t>(it->second)});
                } else {
                    auto [it, inserted] =
                        terminal_ids.emplace(tok.text, static_cast<std::uint32_t>(g.terminals_.size()));
                    if (inserted)
                        g.terminals_.push_back(tok.text);
                    alt.push_back({Symbol::Kind::terminal, it->second});
                }
            }
            alts.push_back(std::move(alt));
        }
        g.rules_.push_back(std::move(alts));
    }
    g.analyse();
    return g;
}

void Grammar::analyse()
{
    const std::size_t n = names_.size();

    min_depth_.assign(n, kUnboundedDepth);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t nt = 0; nt < n; ++nt) {
            for (const auto& alt : rules_[nt]) {
                std::uint32_t depth = 1;
                for (const auto& sym : alt) {
                    if (sym.is_nonterminal())
                        depth = min_depth_[sym.id] == kUnboundedDepth ? kUnboundedDepth
                                                                      : std::max(depth, min_depth_[sym.id] + 1);
                    if (depth == kUnboundedDepth)
                        break;
                }
                if (depth < min_depth_[nt]) {
                    min_depth_[nt] = depth;
                    changed = true;
                }
            }
        }
    }
    for (std::size_t nt = 0; nt < n; ++nt)
        if (min_depth_[nt] == kUnboundedDepth)
            throw GrammarError("unproductive nonterminal <" + names_[nt] + "> has no finite derivation");

    // reach[a][b]: b appears in some derivation step below a.
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t nt = 0; nt < n; ++nt)
        for (const auto& alt : rules_[nt])
            for (const auto& sym : alt)
                if (sym.is_nonterminal())
                    reach[nt][sym.id] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j])
                        reach[i][j] = 1;

    max_depth_.assign(n, 0);
    for (std::size_t nt = 0; nt < n; ++nt) {
        if (reach[nt][nt])
            max_depth_[nt] = kUnboundedDepth;
        for (std::size_t other = 0; other < n; ++other)
            if (reach[nt][other] && reach[other][other])
                max_depth_[nt] = kUnboundedDepth;
    }
    // Remaining symbols form a DAG; relax until stable.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t nt = 0; nt < n; ++nt) {
            if (max_depth_[nt] == kUnboundedDepth)
                continue;
            std::uint32_t best = 1;
            for (const auto& alt : rules_[nt])
                for (const auto& sym : alt)
                    if (sym.is_nonterminal())
                        best = std::max(best, max_depth_[sym.id] + 1);
            if (best != max_depth_[nt]) {
                max_depth_[nt] = best;
                changed = true;
            }
        }
    }

    nullable_.assign(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t nt = 0; nt < n; ++nt) {
            if (nullable_[nt])
                continue;
            for (const auto& alt : rules_[nt]) {
                const bool empty = std::all_of(alt.begin(), alt.end(), [&](const Symbol& s) {
                    return s.is_terminal() ? terminals_[s.id].empty() : nullable_[s.id] != 0;
                });
                if (empty) {
                    nullable_[nt] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }

    alt_min_depth_.assign(n, {});
    alt_max_depth_.assign(n, {});
    for (std::size_t nt = 0; nt < n; ++nt) {
        for (const auto& alt : rules_[nt]) {
            std::uint32_t lo = 1;
            std::uint32_t hi = 1;
            for (const auto& sym : alt) {
                if (!sym.is_nonterminal())
                    continue;
                lo = std::max(lo, min_depth_[sym.id] + 1);
                hi = (hi == kUnboundedDepth || max_depth_[sym.id] == kUnboundedDepth)
                         ? kUnboundedDepth
                         : std::max(hi, max_depth_[sym.id] + 1);
            }
            alt_min_depth_[nt].push_back(lo);
            alt_max_depth_[nt].push_back(hi);
        }
    }
}

Grammar load_grammar_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw GrammarError("cannot open grammar file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_grammar(buf.str());
}

std::string_view pcre_grammar_text() { return kEmbeddedPcreGrammar; }

const Grammar& pcre_grammar()
{
    static const Grammar grammar = load_grammar(pcre_grammar_text());
    return grammar;
}

} // namespace rxgi
