#pragma once

#include "rxgi/fitness.hpp"
#include "rxgi/grammar.hpp"
#include "rxgi/individual.hpp"
#include "rxgi/rng.hpp"
#include "rxgi/seeding.hpp"
#include "rxgi/test_suite.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxgi {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class InitMethod { seed_only, rhh_seed, pigrow_seed };

std::string_view to_string(InitMethod method);
InitMethod parse_init_method(std::string_view text);

struct RunConfig {
    std::size_t population_size = 1000;
    std::size_t generations = 100;
    InitMethod initialisation = InitMethod::seed_only;
    double crossover_rate = 0.1;
    unsigned mutation_events = 1;
    std::size_t tournament_size = 2;
    std::size_t elitism_count = 100;
    std::string grammar_path; // empty: built-in grammar
    std::string problem;
    std::string suite_path;
    FitnessMode mode = FitnessMode::steps;
    std::uint64_t prng_seed = 1;
    Budgets budgets;
    // Tree depth cap for variation is the seed's depth plus this margin.
    std::uint32_t max_tree_depth_extra = 17;
    // Depth ramp for random initialisation; 0 means the grammar minimum.
    std::uint32_t init_min_depth = 0;
    std::uint32_t init_max_depth = 10;
    std::size_t max_generated = 500;
    unsigned workers = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError describing the first violated constraint.
void validate_config(const RunConfig& config);

struct DepthRange {
    std::uint32_t min = 0;
    std::uint32_t max = 0;
};

// Random tree construction ---------------------------------------------------

/// Grow: each node picks uniformly among alternatives that fit in `depth`.
DerivationTree grow_tree(const Grammar& grammar, std::uint32_t symbol, std::uint32_t depth, Rng& rng);

/// Full: prefers alternatives that can still reach exactly `depth`.
DerivationTree full_tree(const Grammar& grammar, std::uint32_t symbol, std::uint32_t depth, Rng& rng);

/// Position-independent grow: nonterminals are expanded in random order
/// (leftmost when `randomize_order` is false) and the last node able to
/// reach `depth` is forced to. Retries until the tree depth equals `depth`;
/// throws std::runtime_error if that keeps failing.
DerivationTree pigrow_tree(const Grammar& grammar, std::uint32_t symbol, std::uint32_t depth, Rng& rng,
                           bool randomize_order = true);

// Initialisation -------------------------------------------------------------

std::vector<Individual> init_seed_only(const SeedParse& seed, const Grammar& grammar, std::size_t n);

/// n-1 ramped half-and-half trees over `depths` plus the seed, which comes
/// last.
std::vector<Individual> init_rhh_plus_seed(const Grammar& grammar, std::size_t n, DepthRange depths,
                                           const SeedParse& seed, Rng& rng);

/// n-1 position-independent grow trees, target depths cycled over `depths`,
/// plus the seed, which comes last.
std::vector<Individual> init_pigrow_plus_seed(const Grammar& grammar, std::size_t n, DepthRange depths,
                                              const SeedParse& seed, Rng& rng);

// Variation ------------------------------------------------------------------

/// Regrows one uniformly chosen nonterminal node by grow within
/// `max_tree_depth`. Fitness is cleared.
Individual subtree_mutation(const Individual& ind, const Grammar& grammar, Rng& rng, std::uint32_t max_tree_depth);

/// With probability `rate`, swaps subtrees rooted at a nonterminal label the
/// parents share. Identical parents, no shared label, or no depth-legal swap
/// after a few attempts return copies of the parents.
std::pair<Individual, Individual> subtree_crossover(const Individual& a, const Individual& b, const Grammar& grammar,
                                                    Rng& rng, double rate, std::uint32_t max_tree_depth);

/// Index of the tournament winner among `size` uniform draws; ties go to the
/// lower index.
std::size_t tournament_select(const std::vector<Individual>& population, std::size_t size, Rng& rng);

// Run ------------------------------------------------------------------------

struct GenerationRecord {
    std::size_t generation = 0;
    double best_combined = 0.0;
    std::uint64_t best_error = 0;
    double best_cost = 0.0;
    std::string best_phenotype;
    double mean_combined = 0.0;
    std::size_t distinct_phenotypes = 0;
    std::size_t evaluations = 0; // fitness computations this generation

    friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct LineageEntry {
    std::size_t generation = 0;
    std::string phenotype;
    FitnessReport fitness;

    friend bool operator==(const LineageEntry&, const LineageEntry&) = default;
};

struct RunResult {
    RunConfig config;
    std::string seed_phenotype;
    FitnessReport seed_fitness;
    std::vector<GenerationRecord> generations;
    std::vector<LineageEntry> lineage;
    std::string best_phenotype;
    FitnessReport best_fitness;
    // Lowest combined fitness among error-free individuals seen.
    std::optional<LineageEntry> best_error_free;
    bool interrupted = false;

    /// seed cost / best error-free cost, if an error-free variant exists.
    std::optional<double> speedup() const;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Generational GE loop. `stop` is polled between generations; when set the
/// partial result is returned with `interrupted` set.
RunResult evolve(const RunConfig& config, const TestSuite& suite, const Grammar& grammar,
                 const std::atomic<bool>* stop = nullptr);

} // namespace rxgi
