#include "rxgi/evolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace rxgi {

std::string_view to_string(InitMethod method)
{
    switch (method) {
    case InitMethod::seed_only:
        return "seed_only";
    case InitMethod::rhh_seed:
        return "rhh_seed";
    case InitMethod::pigrow_seed:
        return "pigrow_seed";
    }
    return "seed_only";
}

InitMethod parse_init_method(std::string_view text)
{
    if (text == "seed_only")
        return InitMethod::seed_only;
    if (text == "rhh_seed")
        return InitMethod::rhh_seed;
    if (text == "pigrow_seed")
        return InitMethod::pigrow_seed;
    throw ConfigError("unknown initialisation '" + std::string(text) +
                      "' (expected seed_only, rhh_seed or pigrow_seed)");
}

void validate_config(const RunConfig& c)
{
    if (c.population_size < 2)
        throw ConfigError("population_size must be at least 2");
    if (c.elitism_count >= c.population_size)
        throw ConfigError("elitism_count must be smaller than population_size");
    if (c.tournament_size < 1)
        throw ConfigError("tournament_size must be at least 1");
    if (!(c.crossover_rate >= 0.0 && c.crossover_rate <= 1.0))
        throw ConfigError("crossover_rate must lie in [0, 1]");
    if (c.budgets.step_normalizer == 0)
        throw ConfigError("step_normalizer must be positive");
    if (!(c.budgets.time_limit_seconds > 0.0))
        throw ConfigError("time_limit must be positive");
    if (c.budgets.repetitions == 0)
        throw ConfigError("repetitions must be at least 1");
    if (c.init_min_depth != 0 && c.init_min_depth > c.init_max_depth)
        throw ConfigError("init_min_depth exceeds init_max_depth");
    if (c.workers == 0)
        throw ConfigError("workers must be at least 1");
}

namespace {

DerivationNode leaf(Symbol s) { return DerivationNode{s, -1, 0, {}}; }

DerivationNode root_node(std::uint32_t symbol)
{
    return leaf(Symbol{Symbol::Kind::nonterminal, symbol});
}

void check_fits(const Grammar& g, std::uint32_t symbol, std::uint32_t depth)
{
    if (depth < g.min_depth(symbol))
        throw std::invalid_argument("depth " + std::to_string(depth) + " is below the minimum depth " +
                                    std::to_string(g.min_depth(symbol)) + " of <" + g.nonterminal_name(symbol) +
                                    ">");
}

void choose(DerivationNode& node, std::size_t alt, const Grammar& g)
{
    node.alternative = static_cast<std::int32_t>(alt);
    node.codon = static_cast<std::uint32_t>(alt);
    const auto& syms = g.alternatives(node.symbol.id)[alt];
    node.children.clear();
    node.children.reserve(syms.size());
    for (const auto& s : syms)
        node.children.push_back(leaf(s));
}

void grow(DerivationNode& node, std::uint32_t budget, const Grammar& g, Rng& rng)
{
    const auto nt = node.symbol.id;
    std::vector<std::size_t> fit;
    for (std::size_t i = 0; i < g.alternative_count(nt); ++i)
        if (g.alternative_min_depth(nt, i) <= budget)
            fit.push_back(i);
    choose(node, fit[rng.index(fit.size())], g);
    for (auto& c : node.children)
        if (c.symbol.is_nonterminal())
            grow(c, budget - 1, g, rng);
}

void full(DerivationNode& node, std::uint32_t budget, const Grammar& g, Rng& rng)
{
    const auto nt = node.symbol.id;
    std::vector<std::size_t> reach;
    std::vector<std::size_t> fit;
    for (std::size_t i = 0; i < g.alternative_count(nt); ++i) {
        if (g.alternative_min_depth(nt, i) > budget)
            continue;
        fit.push_back(i);
        if (g.alternative_max_depth(nt, i) >= budget)
            reach.push_back(i);
    }
    const auto& pool = reach.empty() ? fit : reach;
    choose(node, pool[rng.index(pool.size())], g);
    for (auto& c : node.children)
        if (c.symbol.is_nonterminal())
            full(c, budget - 1, g, rng);
}

constexpr int kPigrowAttempts = 1000;

struct OpenNode {
    DerivationNode* node;
    std::uint32_t level;
};

bool pigrow_attempt(DerivationNode& root, std::uint32_t depth, const Grammar& g, Rng& rng, bool randomize)
{
    std::vector<OpenNode> open{{&root, 1}};
    bool reached = false;
    std::vector<std::size_t> fit;
    std::vector<std::size_t> reach;
    while (!open.empty()) {
        const auto i = randomize ? rng.index(open.size()) : 0;
        auto [node, level] = open[i];
        const auto nt = node->symbol.id;
        const auto budget = depth - level + 1;
        if (level == depth)
            reached = true;
        bool force = !reached;
        if (force) {
            for (std::size_t j = 0; j < open.size() && force; ++j)
                if (j != i && g.max_depth(open[j].node->symbol.id) >= depth - open[j].level + 1)
                    force = false;
        }
        fit.clear();
        reach.clear();
        for (std::size_t a = 0; a < g.alternative_count(nt); ++a) {
            if (g.alternative_min_depth(nt, a) > budget)
                continue;
            fit.push_back(a);
            if (g.alternative_max_depth(nt, a) >= budget)
                reach.push_back(a);
        }
        const auto& pool = force && !reach.empty() ? reach : fit;
        choose(*node, pool[rng.index(pool.size())], g);

        std::vector<OpenNode> kids;
        for (auto& c : node->children)
            if (c.symbol.is_nonterminal())
                kids.push_back({&c, level + 1});
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
        open.insert(open.begin() + static_cast<std::ptrdiff_t>(i), kids.begin(), kids.end());
    }
    return tree_depth(root) == depth;
}

std::vector<std::uint32_t> ramp(const Grammar& g, DepthRange depths)
{
    const auto lo = std::max(depths.min, g.min_depth(g.start()));
    if (depths.min != 0 && depths.min < g.min_depth(g.start()))
        throw ConfigError("initial depth " + std::to_string(depths.min) + " is below the grammar minimum " +
                          std::to_string(g.min_depth(g.start())));
    if (depths.max < lo)
        throw ConfigError("initial depth range [" + std::to_string(lo) + ", " + std::to_string(depths.max) +
                          "] is empty");
    std::vector<std::uint32_t> out;
    for (auto d = lo; d <= depths.max; ++d)
        out.push_back(d);
    return out;
}

Individual seed_individual(const SeedParse& seed, const Grammar& g) { return make_individual(seed.tree, g); }

// Level (root = 1) of the node at `path`.
std::uint32_t level_of(const NodePath& path) { return static_cast<std::uint32_t>(path.size()) + 1; }

} // namespace

DerivationTree grow_tree(const Grammar& grammar, std::uint32_t symbol, std::uint32_t depth, Rng& rng)
{
    check_fits(grammar, symbol, depth);
    auto root = root_node(symbol);
    grow(root, depth, grammar, rng);
    return root;
}

DerivationTree full_tree(const Grammar& grammar, std::uint32_t symbol, std::uint32_t depth, Rng& rng)
{
    check_fits(grammar, symbol, depth);
    auto root = root_node(symbol);
    full(root, depth, grammar, rng);
    return root;
}

DerivationTree pigrow_tree(const Grammar& grammar, std::uint32_t symbol, std::uint32_t depth, Rng& rng,
                           bool randomize_order)
{
    check_fits(grammar, symbol, depth);
    for (int attempt = 0; attempt < kPigrowAttempts; ++attempt) {
        auto root = root_node(symbol);
        if (pigrow_attempt(root, depth, grammar, rng, randomize_order))
            return root;
    }
    throw std::runtime_error("could not grow a tree of depth " + std::to_string(depth) + " from <" +
                             grammar.nonterminal_name(symbol) + ">");
}

std::vector<Individual> init_seed_only(const SeedParse& seed, const Grammar& grammar, std::size_t n)
{
    return std::vector<Individual>(n, seed_individual(seed, grammar));
}

std::vector<Individual> init_rhh_plus_seed(const Grammar& grammar, std::size_t n, DepthRange depths,
                                           const SeedParse& seed, Rng& rng)
{
    if (n == 0)
        return {};
    const auto ds = ramp(grammar, depths);
    std::vector<Individual> pop;
    pop.reserve(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto d = ds[(k / 2) % ds.size()];
        auto tree = k % 2 == 0 ? full_tree(grammar, grammar.start(), d, rng)
                               : grow_tree(grammar, grammar.start(), d, rng);
        pop.push_back(make_individual(std::move(tree), grammar));
    }
    pop.push_back(seed_individual(seed, grammar));
    return pop;
}

std::vector<Individual> init_pigrow_plus_seed(const Grammar& grammar, std::size_t n, DepthRange depths,
                                              const SeedParse& seed, Rng& rng)
{
    if (n == 0)
        return {};
    const auto ds = ramp(grammar, depths);
    std::vector<Individual> pop;
    pop.reserve(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        pop.push_back(make_individual(pigrow_tree(grammar, grammar.start(), ds[k % ds.size()], rng), grammar));
    pop.push_back(seed_individual(seed, grammar));
    return pop;
}

Individual subtree_mutation(const Individual& ind, const Grammar& grammar, Rng& rng, std::uint32_t max_tree_depth)
{
    if (!ind.tree)
        throw std::invalid_argument("cannot mutate an individual without a derivation tree");
    const auto paths = nonterminal_paths(*ind.tree);
    constexpr int kAttempts = 10;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        const auto& path = paths[rng.index(paths.size())];
        const auto level = level_of(path);
        auto tree = *ind.tree;
        auto& node = node_at(tree, path);
        if (level > max_tree_depth || max_tree_depth - level + 1 < grammar.min_depth(node.symbol.id))
            continue;
        node = grow_tree(grammar, node.symbol.id, max_tree_depth - level + 1, rng);
        return make_individual(std::move(tree), grammar);
    }
    auto copy = ind;
    copy.fitness.reset();
    return copy;
}

std::pair<Individual, Individual> subtree_crossover(const Individual& a, const Individual& b, const Grammar& grammar,
                                                    Rng& rng, double rate, std::uint32_t max_tree_depth)
{
    if (!a.tree || !b.tree)
        throw std::invalid_argument("cannot cross over individuals without derivation trees");
    if (!rng.bernoulli(rate) || *a.tree == *b.tree)
        return {a, b};

    std::map<std::uint32_t, std::vector<NodePath>> in_a;
    std::map<std::uint32_t, std::vector<NodePath>> in_b;
    for (auto& p : nonterminal_paths(*a.tree))
        in_a[node_at(*a.tree, p).symbol.id].push_back(std::move(p));
    for (auto& p : nonterminal_paths(*b.tree))
        in_b[node_at(*b.tree, p).symbol.id].push_back(std::move(p));
    std::vector<std::uint32_t> shared;
    for (const auto& [label, _] : in_a)
        if (in_b.contains(label))
            shared.push_back(label);
    if (shared.empty())
        return {a, b};

    constexpr int kAttempts = 10;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        const auto label = shared[rng.index(shared.size())];
        const auto& pa = in_a[label][rng.index(in_a[label].size())];
        const auto& pb = in_b[label][rng.index(in_b[label].size())];
        const auto& na = node_at(*a.tree, pa);
        const auto& nb = node_at(*b.tree, pb);
        if (level_of(pa) + tree_depth(nb) - 1 > max_tree_depth || level_of(pb) + tree_depth(na) - 1 > max_tree_depth)
            continue;
        auto ta = *a.tree;
        auto tb = *b.tree;
        node_at(ta, pa) = nb;
        node_at(tb, pb) = na;
        return {make_individual(std::move(ta), grammar), make_individual(std::move(tb), grammar)};
    }
    return {a, b};
}

std::size_t tournament_select(const std::vector<Individual>& population, std::size_t size, Rng& rng)
{
    std::size_t best = rng.index(population.size());
    for (std::size_t k = 1; k < size; ++k) {
        const auto c = rng.index(population.size());
        const auto fc = population[c].fitness->combined;
        const auto fb = population[best].fitness->combined;
        if (fc < fb || (fc == fb && c < best))
            best = c;
    }
    return best;
}

std::optional<double> RunResult::speedup() const
{
    if (!best_error_free || best_error_free->fitness.cost_component <= 0.0)
        return std::nullopt;
    return seed_fitness.cost_component / best_error_free->fitness.cost_component;
}

namespace {

std::vector<std::size_t> ranking(const std::vector<Individual>& pop)
{
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return pop[x].fitness->combined < pop[y].fitness->combined;
    });
    return order;
}

GenerationRecord summarise(std::size_t generation, const std::vector<Individual>& pop,
                           const std::vector<std::size_t>& order, std::size_t evaluations)
{
    GenerationRecord r;
    r.generation = generation;
    const auto& best = pop[order.front()];
    r.best_combined = best.fitness->combined;
    r.best_error = best.fitness->functionality_error;
    r.best_cost = best.fitness->cost_component;
    r.best_phenotype = best.phenotype;
    double sum = 0.0;
    std::unordered_set<std::string_view> distinct;
    for (const auto& ind : pop) {
        sum += ind.fitness->combined;
        distinct.insert(ind.phenotype);
    }
    r.mean_combined = sum / static_cast<double>(pop.size());
    r.distinct_phenotypes = distinct.size();
    r.evaluations = evaluations;
    return r;
}

} // namespace

RunResult evolve(const RunConfig& config, const TestSuite& suite, const Grammar& grammar,
                 const std::atomic<bool>* stop)
{
    validate_config(config);
    validate_suite(suite);
    const auto seed = parse_regex_to_tree(suite.seed, grammar);
    const auto max_depth = tree_depth(seed.tree) + config.max_tree_depth_extra;
    const DepthRange depths{config.init_min_depth, std::min(config.init_max_depth, max_depth)};

    Rng rng(config.prng_seed);
    Evaluator evaluator(suite, config.mode, config.budgets);

    RunResult result;
    result.config = config;
    result.seed_phenotype = seed.source;
    result.seed_fitness = evaluator.evaluate(seed_individual(seed, grammar));

    std::vector<Individual> pop;
    switch (config.initialisation) {
    case InitMethod::seed_only:
        pop = init_seed_only(seed, grammar, config.population_size);
        break;
    case InitMethod::rhh_seed:
        pop = init_rhh_plus_seed(grammar, config.population_size, depths, seed, rng);
        break;
    case InitMethod::pigrow_seed:
        pop = init_pigrow_plus_seed(grammar, config.population_size, depths, seed, rng);
        break;
    }

    auto evaluate = [&] {
        const auto pending = static_cast<std::size_t>(
            std::count_if(pop.begin(), pop.end(), [](const Individual& i) { return !i.fitness; }));
        evaluator.evaluate_all(pop, config.workers);
        return pending;
    };
    auto note_error_free = [&](std::size_t generation) {
        for (const auto& ind : pop) {
            const auto& f = *ind.fitness;
            if (f.functionality_error != 0 || !f.valid)
                continue;
            if (!result.best_error_free || f.combined < result.best_error_free->fitness.combined)
                result.best_error_free = LineageEntry{generation, ind.phenotype, f};
        }
    };

    auto evaluations = evaluate();
    for (std::size_t gen = 0;; ++gen) {
        const auto order = ranking(pop);
        result.generations.push_back(summarise(gen, pop, order, evaluations));
        const auto& best = pop[order.front()];
        if (result.lineage.empty() || best.fitness->combined < result.lineage.back().fitness.combined)
            result.lineage.push_back(LineageEntry{gen, best.phenotype, *best.fitness});
        note_error_free(gen);
        result.best_phenotype = best.phenotype;
        result.best_fitness = *best.fitness;

        if (gen == config.generations)
            break;
        if (stop && stop->load()) {
            result.interrupted = true;
            break;
        }

        std::vector<Individual> next;
        next.reserve(config.population_size);
        for (std::size_t k = 0; k < config.elitism_count; ++k)
            next.push_back(pop[order[k]]);
        while (next.size() < config.population_size) {
            const auto& p1 = pop[tournament_select(pop, config.tournament_size, rng)];
            const auto& p2 = pop[tournament_select(pop, config.tournament_size, rng)];
            auto [c1, c2] = subtree_crossover(p1, p2, grammar, rng, config.crossover_rate, max_depth);
            for (auto* child : {&c1, &c2}) {
                for (unsigned m = 0; m < config.mutation_events; ++m)
                    *child = subtree_mutation(*child, grammar, rng, max_depth);
            }
            next.push_back(std::move(c1));
            if (next.size() < config.population_size)
                next.push_back(std::move(c2));
        }
        pop = std::move(next);
        evaluations = evaluate();
    }
    return result;
}

} // namespace rxgi
