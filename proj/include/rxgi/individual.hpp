#pragma once

#include "rxgi/derivation.hpp"
#include "rxgi/fitness_report.hpp"

#include <optional>
#include <string>

namespace rxgi {

struct Individual {
    Genome genome;
    std::optional<DerivationTree> tree; // absent when the genome failed to map
    std::string phenotype;
    std::optional<FitnessReport> fitness;
};

/// Builds an individual from a complete tree: canonical genome, phenotype
/// from the leaves, fitness unevaluated.
Individual make_individual(DerivationTree tree, const Grammar& grammar);

/// Maps a genome; an unmappable genome yields an individual without a tree.
Individual individual_from_genome(Genome genome, const Grammar& grammar, const MappingLimits& limits);

} // namespace rxgi
