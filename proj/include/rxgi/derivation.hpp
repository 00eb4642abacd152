#pragma once

#include "rxgi/grammar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rxgi {

inline constexpr std::uint32_t kCodonLimit = 1u << 31;

struct Genome {
    std::vector<std::uint32_t> codons; // each in [0, 2^31)
    std::size_t used_length = 0;

    friend bool operator==(const Genome&, const Genome&) = default;
};

/// One node of a derivation tree. Terminal nodes are leaves; a nonterminal
/// node's children are the symbols of its chosen alternative, in order.
struct DerivationNode {
    Symbol symbol;
    std::int32_t alternative = -1; // nonterminals only
    std::uint32_t codon = 0;       // codon that selected `alternative`
    std::vector<DerivationNode> children;

    friend bool operator==(const DerivationNode&, const DerivationNode&) = default;
};

using DerivationTree = DerivationNode;

struct MappingLimits {
    std::uint32_t max_wraps = 0;
    std::uint32_t max_tree_depth = 17;
};

enum class MappingFailure { none, wraps_exhausted, depth_exceeded };

struct Mapping {
    std::optional<DerivationTree> tree;
    std::size_t used_length = 0;
    MappingFailure failure = MappingFailure::none;

    bool valid() const { return tree.has_value(); }
};

/// Leftmost-derivation genotype-to-phenotype mapping. Every expanded
/// nonterminal consumes one codon and takes alternative `codon % count`.
Mapping map_genome(const Genome& genome, const Grammar& grammar, const MappingLimits& limits);

/// In-order concatenation of terminal leaves. Throws std::invalid_argument
/// on an unexpanded nonterminal leaf.
std::string tree_to_phenotype(const DerivationTree& tree, const Grammar& grammar);

/// Canonical genome for a tree: one codon per nonterminal in leftmost
/// derivation order, each equal to the chosen alternative index.
Genome genome_of(const DerivationTree& tree);

/// Nonterminal levels from this node down (a nonterminal with only terminal
/// children has depth 1; a terminal has depth 0).
std::uint32_t tree_depth(const DerivationNode& node);

std::size_t nonterminal_node_count(const DerivationNode& node);

/// Path of child indices from the root to a node.
using NodePath = std::vector<std::uint32_t>;

/// Paths to every nonterminal node in preorder.
std::vector<NodePath> nonterminal_paths(const DerivationNode& root);

DerivationNode& node_at(DerivationNode& root, const NodePath& path);
const DerivationNode& node_at(const DerivationNode& root, const NodePath& path);

/// True when the tree is a well-formed derivation under `grammar`: each
/// nonterminal's children spell its chosen alternative.
bool is_valid_derivation(const DerivationNode& node, const Grammar& grammar);

} // namespace rxgi
