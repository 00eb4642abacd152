#include "rxgi/individual.hpp"

namespace rxgi {

Individual make_individual(DerivationTree tree, const Grammar& grammar)
{
    Individual ind;
    ind.genome = genome_of(tree);
    ind.phenotype = tree_to_phenotype(tree, grammar);
    ind.tree = std::move(tree);
    return ind;
}

Individual individual_from_genome(Genome genome, const Grammar& grammar, const MappingLimits& limits)
{
    auto mapping = map_genome(genome, grammar, limits);
    Individual ind;
    genome.used_length = mapping.used_length;
    ind.genome = std::move(genome);
    if (mapping.tree) {
        ind.phenotype = tree_to_phenotype(*mapping.tree, grammar);
        ind.tree = std::move(mapping.tree);
    }
    return ind;
}

} // namespace rxgi
