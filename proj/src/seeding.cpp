#include "rxgi/seeding.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace rxgi {

namespace {

class PositionSet {
public:
    explicit PositionSet(std::size_t size = 0) : words_((size + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    bool merge(const PositionSet& other)
    {
        bool changed = false;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            const auto merged = words_[w] | other.words_[w];
            changed |= merged != words_[w];
            words_[w] = merged;
        }
        return changed;
    }

    bool empty() const
    {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                const auto b = static_cast<std::size_t>(__builtin_ctzll(bits));
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    template <typename F>
    void for_each_descending(F&& f) const
    {
        for (std::size_t w = words_.size(); w-- > 0;) {
            auto bits = words_[w];
            while (bits != 0) {
                const auto b = static_cast<std::size_t>(63 - __builtin_clzll(bits));
                if (!f(w * 64 + b))
                    return;
                bits &= ~(std::uint64_t{1} << b);
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

class ChartParser {
public:
    ChartParser(std::string_view text, const Grammar& grammar)
        : text_(text), grammar_(grammar), n_(text.size()),
          ends_(grammar.nonterminal_count(), std::vector<PositionSet>(n_ + 1, PositionSet(n_ + 1))),
          active_(grammar.nonterminal_count() * (n_ + 1) * (n_ + 1), 0)
    {
        for (std::size_t i = n_ + 1; i-- > 0;)
            fill_position(i);
    }

    bool derives_start() const { return ends_[grammar_.start()][0].test(n_); }

    std::optional<DerivationNode> build(std::uint32_t nt, std::size_t from, std::size_t to)
    {
        auto& active = active_[(nt * (n_ + 1) + from) * (n_ + 1) + to];
        if (active)
            return std::nullopt; // unit cycle back to the same span
        active = 1;
        std::optional<DerivationNode> result;
        const auto alts = grammar_.alternatives(nt);
        for (std::size_t a = 0; a < alts.size() && !result; ++a) {
            if (!sequence_can(alts[a], 0, from, to))
                continue;
            std::vector<DerivationNode> children;
            if (build_sequence(alts[a], 0, from, to, children)) {
                result = DerivationNode{{Symbol::Kind::nonterminal, nt},
                                        static_cast<std::int32_t>(a),
                                        static_cast<std::uint32_t>(a),
                                        std::move(children)};
            }
        }
        active = 0;
        return result;
    }

private:
    std::optional<std::size_t> terminal_end(std::uint32_t terminal, std::size_t at) const
    {
        const auto& t = grammar_.terminal(terminal);
        if (text_.substr(at).starts_with(t))
            return at + t.size();
        return std::nullopt;
    }

    void fill_position(std::size_t i)
    {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::uint32_t nt = 0; nt < grammar_.nonterminal_count(); ++nt) {
                for (const auto& alt : grammar_.alternatives(nt)) {
                    PositionSet current(n_ + 1);
                    current.set(i);
                    for (const auto& sym : alt) {
                        PositionSet next(n_ + 1);
                        current.for_each([&](std::size_t p) {
                            if (sym.is_terminal()) {
                                if (const auto e = terminal_end(sym.id, p))
                                    next.set(*e);
                            } else {
                                next.merge(ends_[sym.id][p]);
                            }
                        });
                        current = std::move(next);
                        if (current.empty())
                            break;
                    }
                    changed |= ends_[nt][i].merge(current);
                }
            }
        }
    }

    bool sequence_can(const Alternative& alt, std::size_t k, std::size_t at, std::size_t to) const
    {
        if (k == alt.size())
            return at == to;
        const auto& sym = alt[k];
        if (sym.is_terminal()) {
            const auto e = terminal_end(sym.id, at);
            return e && *e <= to && sequence_can(alt, k + 1, *e, to);
        }
        bool found = false;
        ends_[sym.id][at].for_each_descending([&](std::size_t e) {
            if (e <= to && sequence_can(alt, k + 1, e, to))
                found = true;
            return !found;
        });
        return found;
    }

    bool build_sequence(const Alternative& alt, std::size_t k, std::size_t at, std::size_t to,
                        std::vector<DerivationNode>& out)
    {
        if (k == alt.size())
            return at == to;
        const auto& sym = alt[k];
        if (sym.is_terminal()) {
            const auto e = terminal_end(sym.id, at);
            if (!e || *e > to)
                return false;
            out.push_back(DerivationNode{sym, -1, 0, {}});
            if (build_sequence(alt, k + 1, *e, to, out))
                return true;
            out.pop_back();
            return false;
        }
        std::vector<std::size_t> candidates;
        ends_[sym.id][at].for_each_descending([&](std::size_t e) {
            if (e <= to && sequence_can(alt, k + 1, e, to))
                candidates.push_back(e);
            return true;
        });
        for (const auto e : candidates) {
            auto child = build(sym.id, at, e);
            if (!child)
                continue;
            out.push_back(std::move(*child));
            if (build_sequence(alt, k + 1, e, to, out))
                return true;
            out.pop_back();
        }
        return false;
    }

    std::string_view text_;
    const Grammar& grammar_;
    std::size_t n_;
    std::vector<std::vector<PositionSet>> ends_; // ends_[nt][i]: positions j with nt =>* text[i, j)
    std::vector<char> active_;
};

// Earley recogniser used only to locate the first position no derivation
// can extend past, for error reporting.
std::size_t first_underivable_position(std::string_view text, const Grammar& grammar)
{
    struct Item {
        std::uint32_t nt;
        std::uint32_t alt;
        std::uint32_t dot;
        std::uint32_t origin;
    };
    auto key = [](const Item& it) {
        return (std::uint64_t{it.nt} << 48) | (std::uint64_t{it.alt} << 36) | (std::uint64_t{it.dot} << 28) |
               it.origin;
    };

    const std::size_t n = text.size();
    std::vector<std::vector<Item>> sets(n + 1);
    std::vector<std::unordered_set<std::uint64_t>> seen(n + 1);
    auto add = [&](std::size_t at, const Item& it) {
        if (seen[at].insert(key(it)).second)
            sets[at].push_back(it);
    };

    for (std::uint32_t a = 0; a < grammar.alternative_count(grammar.start()); ++a)
        add(0, {grammar.start(), a, 0, 0});

    std::size_t furthest = 0;
    std::size_t partial = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!sets[i].empty())
            furthest = i;
        for (std::size_t idx = 0; idx < sets[i].size(); ++idx) {
            const Item it = sets[i][idx];
            const auto& alt = grammar.alternatives(it.nt)[it.alt];
            if (it.dot < alt.size()) {
                const auto& sym = alt[it.dot];
                if (sym.is_nonterminal()) {
                    for (std::uint32_t a = 0; a < grammar.alternative_count(sym.id); ++a)
                        add(i, {sym.id, a, 0, static_cast<std::uint32_t>(i)});
                    if (grammar.nullable(sym.id))
                        add(i, {it.nt, it.alt, it.dot + 1, it.origin});
                } else {
                    const auto& t = grammar.terminal(sym.id);
                    const auto rest = text.substr(i);
                    if (rest.starts_with(t)) {
                        add(i + t.size(), {it.nt, it.alt, it.dot + 1, it.origin});
                    } else {
                        std::size_t common = 0;
                        while (common < t.size() && common < rest.size() && t[common] == rest[common])
                            ++common;
                        partial = std::max(partial, i + common);
                    }
                }
            } else {
                for (std::size_t pidx = 0; pidx < sets[it.origin].size(); ++pidx) {
                    const Item parent = sets[it.origin][pidx];
                    const auto& palt = grammar.alternatives(parent.nt)[parent.alt];
                    if (parent.dot < palt.size() && palt[parent.dot] == Symbol{Symbol::Kind::nonterminal, it.nt})
                        add(i, {parent.nt, parent.alt, parent.dot + 1, parent.origin});
                }
            }
        }
    }
    return std::max(furthest, partial);
}

} // namespace

SeedParse parse_regex_to_tree(std::string_view text, const Grammar& grammar)
{
    ChartParser parser(text, grammar);
    std::optional<DerivationNode> tree;
    if (parser.derives_start())
        tree = parser.build(grammar.start(), 0, text.size());
    if (!tree) {
        const auto pos = first_underivable_position(text, grammar);
        std::string message = "'" + std::string(text) + "' is not derivable from <" +
                              grammar.nonterminal_name(grammar.start()) + ">: ";
        message += pos < text.size() ? "no derivation continues at offset " + std::to_string(pos) + " ('" +
                                           std::string(1, text[pos]) + "')"
                                     : "input ends before a derivation completes";
        throw SeedParseError(message, pos);
    }
    SeedParse result{std::move(*tree), {}, std::string(text)};
    result.genome = genome_of(result.tree);
    return result;
}

} // namespace rxgi
