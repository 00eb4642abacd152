#include "rxgi/derivation.hpp"

#include <stdexcept>

namespace rxgi {

namespace {

struct Mapper {
    const Genome& genome;
    const Grammar& grammar;
    const MappingLimits& limits;
    std::size_t next = 0;
    std::size_t consumed = 0;
    std::uint32_t wraps = 0;
    MappingFailure failure = MappingFailure::none;

    bool take(std::uint32_t& codon)
    {
        if (next == genome.codons.size()) {
            if (wraps == limits.max_wraps) {
                failure = MappingFailure::wraps_exhausted;
                return false;
            }
            ++wraps;
            next = 0;
        }
        codon = genome.codons[next++];
        ++consumed;
        return true;
    }

    bool expand(DerivationNode& node, std::uint32_t level)
    {
        if (level > limits.max_tree_depth) {
            failure = MappingFailure::depth_exceeded;
            return false;
        }
        std::uint32_t codon = 0;
        if (!take(codon))
            return false;
        const auto alts = grammar.alternatives(node.symbol.id);
        node.codon = codon;
        node.alternative = static_cast<std::int32_t>(codon % alts.size());
        const auto& chosen = alts[static_cast<std::size_t>(node.alternative)];
        node.children.reserve(chosen.size());
        for (const auto& sym : chosen)
            node.children.push_back(DerivationNode{sym, -1, 0, {}});
        for (auto& child : node.children)
            if (child.symbol.is_nonterminal() && !expand(child, level + 1))
                return false;
        return true;
    }
};

void collect_paths(const DerivationNode& node, NodePath& path, std::vector<NodePath>& out)
{
    if (!node.symbol.is_nonterminal())
        return;
    out.push_back(path);
    for (std::uint32_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        collect_paths(node.children[i], path, out);
        path.pop_back();
    }
}

void append_codons(const DerivationNode& node, std::vector<std::uint32_t>& out)
{
    if (!node.symbol.is_nonterminal())
        return;
    out.push_back(static_cast<std::uint32_t>(node.alternative));
    for (const auto& child : node.children)
        append_codons(child, out);
}

void append_phenotype(const DerivationNode& node, const Grammar& grammar, std::string& out)
{
    if (node.symbol.is_terminal()) {
        out += grammar.terminal(node.symbol.id);
        return;
    }
    if (node.children.empty())
        throw std::invalid_argument("unexpanded nonterminal <" + grammar.nonterminal_name(node.symbol.id) +
                                    "> in derivation tree");
    for (const auto& child : node.children)
        append_phenotype(child, grammar, out);
}

} // namespace

Mapping map_genome(const Genome& genome, const Grammar& grammar, const MappingLimits& limits)
{
    if (genome.codons.empty())
        throw std::invalid_argument("cannot map an empty genome");
    Mapper mapper{genome, grammar, limits};
    DerivationTree root{{Symbol::Kind::nonterminal, grammar.start()}, -1, 0, {}};
    Mapping result;
    if (mapper.expand(root, 1))
        result.tree = std::move(root);
    result.used_length = mapper.consumed;
    result.failure = mapper.failure;
    return result;
}

std::string tree_to_phenotype(const DerivationTree& tree, const Grammar& grammar)
{
    std::string out;
    append_phenotype(tree, grammar, out);
    return out;
}

Genome genome_of(const DerivationTree& tree)
{
    Genome g;
    append_codons(tree, g.codons);
    g.used_length = g.codons.size();
    return g;
}

std::uint32_t tree_depth(const DerivationNode& node)
{
    if (!node.symbol.is_nonterminal())
        return 0;
    std::uint32_t deepest = 0;
    for (const auto& child : node.children)
        deepest = std::max(deepest, tree_depth(child));
    return deepest + 1;
}

std::size_t nonterminal_node_count(const DerivationNode& node)
{
    if (!node.symbol.is_nonterminal())
        return 0;
    std::size_t n = 1;
    for (const auto& child : node.children)
        n += nonterminal_node_count(child);
    return n;
}

std::vector<NodePath> nonterminal_paths(const DerivationNode& root)
{
    std::vector<NodePath> out;
    NodePath path;
    collect_paths(root, path, out);
    return out;
}

DerivationNode& node_at(DerivationNode& root, const NodePath& path)
{
    DerivationNode* node = &root;
    for (const auto i : path)
        node = &node->children.at(i);
    return *node;
}

const DerivationNode& node_at(const DerivationNode& root, const NodePath& path)
{
    const DerivationNode* node = &root;
    for (const auto i : path)
        node = &node->children.at(i);
    return *node;
}

bool is_valid_derivation(const DerivationNode& node, const Grammar& grammar)
{
    if (node.symbol.is_terminal())
        return node.children.empty() && node.symbol.id < grammar.terminal_count();
    if (node.symbol.id >= grammar.nonterminal_count() || node.alternative < 0)
        return false;
    const auto alts = grammar.alternatives(node.symbol.id);
    if (static_cast<std::size_t>(node.alternative) >= alts.size())
        return false;
    const auto& chosen = alts[static_cast<std::size_t>(node.alternative)];
    if (chosen.size() != node.children.size())
        return false;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (!(chosen[i] == node.children[i].symbol) || !is_valid_derivation(node.children[i], grammar))
            return false;
    }
    return true;
}

} // namespace rxgi
