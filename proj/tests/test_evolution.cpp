#include "rxgi/benchmarks.hpp"
#include "rxgi/evolution.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace rxgi;

namespace {

const Grammar& ab()
{
    static const Grammar g = load_grammar("<s> ::= a | b\n");
    return g;
}

RunConfig small_config(InitMethod init = InitMethod::seed_only)
{
    RunConfig c;
    c.population_size = 30;
    c.elitism_count = 5;
    c.generations = 5;
    c.initialisation = init;
    c.prng_seed = 3;
    return c;
}

const TestSuite& qt3ts_suite()
{
    static const TestSuite s = problem_suite(load_problem("catastrophic_qt3ts"));
    return s;
}

bool derivable(const std::string& text)
{
    try {
        parse_regex_to_tree(text, pcre_grammar());
        return true;
    } catch (const SeedParseError&) {
        return false;
    }
}

} // namespace

TEST_CASE("seed-only initialisation")
{
    const auto seed = parse_regex_to_tree("a", ab());
    const auto pop = init_seed_only(seed, ab(), 3);
    REQUIRE(pop.size() == 3);
    for (const auto& ind : pop)
        CHECK(ind.phenotype == "a");
}

TEST_CASE("ramped half-and-half plus seed")
{
    const auto& g = pcre_grammar();
    const auto seed = parse_regex_to_tree(".X(.+)+XX", g);
    Rng rng(1);
    const auto two = init_rhh_plus_seed(g, 2, {3, 10}, seed, rng);
    REQUIRE(two.size() == 2);
    CHECK(two.back().phenotype == seed.source);

    const auto pop = init_rhh_plus_seed(g, 200, {3, 10}, seed, rng);
    CHECK(std::count_if(pop.begin(), pop.end(), [&](const Individual& i) { return i.phenotype == seed.source; }) >= 1);
    std::set<std::uint32_t> depths;
    for (std::size_t i = 0; i + 1 < pop.size(); ++i) {
        const auto d = tree_depth(*pop[i].tree);
        CHECK(d >= 3);
        CHECK(d <= 10);
        depths.insert(d);
    }
    CHECK(*depths.begin() == 3);
    CHECK(*depths.rbegin() == 10);
    CHECK_THROWS_AS(init_rhh_plus_seed(g, 10, {2, 10}, seed, rng), ConfigError);
}

TEST_CASE("position-independent grow reaches its target depth")
{
    const auto& g = pcre_grammar();
    const auto seed = parse_regex_to_tree("a", g);
    Rng rng(2);
    const auto pop = init_pigrow_plus_seed(g, 100, {3, 10}, seed, rng);
    REQUIRE(pop.size() == 100);
    for (std::size_t i = 0; i + 1 < pop.size(); ++i) {
        const auto target = 3 + static_cast<std::uint32_t>(i % 8);
        CHECK(tree_depth(*pop[i].tree) == target);
    }
    CHECK(pop.back().phenotype == "a");
    const auto two = init_pigrow_plus_seed(g, 2, {3, 10}, seed, rng);
    CHECK(two.size() == 2);
}

TEST_CASE("randomised expansion order changes the distribution")
{
    // Leftmost expansion lets <a> choose freely and forces <b> to reach the
    // target; random order treats both branches alike.
    const auto g = load_grammar("<s> ::= <a> <b>\n<a> ::= x | ( <a> )\n<b> ::= y | [ <b> ]\n");
    Rng a(9);
    Rng b(9);
    int deep_left_random = 0;
    int deep_left_leftmost = 0;
    constexpr int kSamples = 1000;
    for (int i = 0; i < kSamples; ++i) {
        const auto r = tree_to_phenotype(pigrow_tree(g, g.start(), 4, a, true), g);
        const auto l = tree_to_phenotype(pigrow_tree(g, g.start(), 4, b, false), g);
        deep_left_random += r.starts_with("((");
        deep_left_leftmost += l.starts_with("((");
    }
    MESSAGE("left branch at full depth: random order " << deep_left_random << ", leftmost " << deep_left_leftmost);
    // Two-proportion z statistic.
    const double p1 = deep_left_random / double(kSamples);
    const double p2 = deep_left_leftmost / double(kSamples);
    const double pooled = (p1 + p2) / 2;
    const double z = (p1 - p2) / std::sqrt(pooled * (1 - pooled) * 2.0 / kSamples);
    CHECK(std::abs(z) > 4.0);

    const auto& pcre = pcre_grammar();
    Rng c(9);
    Rng d(9);
    int differ = 0;
    for (int i = 0; i < 100; ++i)
        differ += tree_to_phenotype(pigrow_tree(pcre, pcre.start(), 6, c, true), pcre) !=
                  tree_to_phenotype(pigrow_tree(pcre, pcre.start(), 6, d, false), pcre);
    CHECK(differ > 0);
}

TEST_CASE("mutation")
{
    Rng rng(4);
    const auto only = make_individual(parse_regex_to_tree("a", ab()).tree, ab());
    std::set<std::string> seen;
    for (int i = 0; i < 50; ++i)
        seen.insert(subtree_mutation(only, ab(), rng, 5).phenotype);
    CHECK(seen == std::set<std::string>{"a", "b"});

    const auto& g = pcre_grammar();
    const auto mac = parse_regex_to_tree(load_problem("mac_address_validation").seed, g);
    const auto ind = make_individual(mac.tree, g);
    const auto cap = tree_depth(mac.tree) + 17;
    int changed = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto m = subtree_mutation(ind, g, rng, cap);
        CHECK_FALSE(m.fitness.has_value());
        REQUIRE(m.tree);
        CHECK(tree_depth(*m.tree) <= cap);
        CHECK(is_valid_derivation(*m.tree, g));
        changed += m.phenotype != ind.phenotype;
        if (i < 200)
            CHECK(derivable(m.phenotype));
    }
    CHECK(changed > 0);
}

TEST_CASE("crossover")
{
    const auto& g = pcre_grammar();
    Rng rng(6);
    const auto a = make_individual(parse_regex_to_tree(".X(.+)+XX", g).tree, g);
    const auto b = make_individual(parse_regex_to_tree("^(.*?,){11}P", g).tree, g);

    for (int i = 0; i < 50; ++i) {
        const auto [c1, c2] = subtree_crossover(a, a, g, rng, 1.0, 30);
        CHECK(c1.phenotype == a.phenotype);
        CHECK(c2.phenotype == a.phenotype);
        const auto [d1, d2] = subtree_crossover(a, b, g, rng, 0.0, 30);
        CHECK(d1.phenotype == a.phenotype);
        CHECK(d2.phenotype == b.phenotype);
    }

    int swapped = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto [c1, c2] = subtree_crossover(a, b, g, rng, 1.0, 30);
        REQUIRE(c1.tree);
        REQUIRE(c2.tree);
        CHECK(tree_depth(*c1.tree) <= 30);
        CHECK(tree_depth(*c2.tree) <= 30);
        CHECK(derivable(c1.phenotype));
        CHECK(derivable(c2.phenotype));
        swapped += c1.phenotype != a.phenotype;
    }
    CHECK(swapped > 0);

    const auto other = load_grammar("<t> ::= x\n");
    const auto x = make_individual(parse_regex_to_tree("x", other).tree, other);
    const auto y = make_individual(parse_regex_to_tree("a", ab()).tree, ab());
    const auto [p, q] = subtree_crossover(x, y, ab(), rng, 1.0, 5);
    CHECK(p.phenotype == "x");
    CHECK(q.phenotype == "a");
}

TEST_CASE("tournament prefers fitter and earlier individuals")
{
    std::vector<Individual> pop(3);
    pop[0].fitness = FitnessReport{0, 0.5, 0.5};
    pop[1].fitness = FitnessReport{0, 0.1, 0.1};
    pop[2].fitness = FitnessReport{0, 0.1, 0.1};
    Rng rng(1);
    std::vector<int> wins(3);
    for (int i = 0; i < 3000; ++i)
        ++wins[tournament_select(pop, 2, rng)];
    CHECK(wins[1] > wins[2]);
    CHECK(wins[1] > wins[0]);
    CHECK(wins[0] > 0);
}

TEST_CASE("zero generations with seed-only returns the seed")
{
    auto c = small_config();
    c.generations = 0;
    const auto r = evolve(c, qt3ts_suite(), pcre_grammar());
    REQUIRE(r.generations.size() == 1);
    CHECK(r.generations[0].distinct_phenotypes == 1);
    CHECK(r.best_phenotype == ".X(.+)+XX");
    CHECK(r.best_fitness == r.seed_fitness);
    CHECK(r.lineage.size() == 1);
}

TEST_CASE("evolution invariants")
{
    for (auto init : {InitMethod::seed_only, InitMethod::rhh_seed, InitMethod::pigrow_seed}) {
        CAPTURE(to_string(init));
        const auto c = small_config(init);
        const auto r = evolve(c, qt3ts_suite(), pcre_grammar());
        REQUIRE(r.generations.size() == c.generations + 1);
        for (std::size_t g = 1; g < r.generations.size(); ++g) {
            CHECK(r.generations[g].best_combined <= r.generations[g - 1].best_combined);
            CHECK(r.generations[g].evaluations <= c.population_size - c.elitism_count);
        }
        CHECK(r.generations[0].evaluations == c.population_size);
        for (std::size_t i = 1; i < r.lineage.size(); ++i) {
            CHECK(r.lineage[i].generation > r.lineage[i - 1].generation);
            CHECK(r.lineage[i].fitness.combined < r.lineage[i - 1].fitness.combined);
        }
        CHECK(r.best_fitness.combined <= r.seed_fitness.combined);
        REQUIRE(r.best_error_free);
        CHECK(r.best_error_free->fitness.functionality_error == 0);
        CHECK(r.speedup().has_value());
        CHECK(derivable(r.best_phenotype));
    }
}

TEST_CASE("seed-only diversity appears after one generation")
{
    auto c = small_config();
    c.generations = 1;
    const auto r = evolve(c, qt3ts_suite(), pcre_grammar());
    CHECK(r.generations[0].distinct_phenotypes == 1);
    CHECK(r.generations[1].distinct_phenotypes > 1);
}

TEST_CASE("steps-mode runs are reproducible")
{
    const auto c = small_config(InitMethod::rhh_seed);
    const auto a = evolve(c, qt3ts_suite(), pcre_grammar());
    const auto b = evolve(c, qt3ts_suite(), pcre_grammar());
    CHECK(a == b);
    auto other = c;
    other.prng_seed = 4;
    CHECK_FALSE(evolve(other, qt3ts_suite(), pcre_grammar()) == a);
}

TEST_CASE("parallel evaluation does not change the result")
{
    auto c = small_config();
    const auto serial = evolve(c, qt3ts_suite(), pcre_grammar());
    c.workers = 4;
    auto parallel = evolve(c, qt3ts_suite(), pcre_grammar());
    parallel.config.workers = 1;
    CHECK(parallel == serial);
}

TEST_CASE("a stop request ends the run early")
{
    std::atomic<bool> stop{true};
    const auto r = evolve(small_config(), qt3ts_suite(), pcre_grammar(), &stop);
    CHECK(r.interrupted);
    CHECK(r.generations.size() == 1);
}

TEST_CASE("configuration validation")
{
    auto c = small_config();
    CHECK_NOTHROW(validate_config(c));
    c.elitism_count = c.population_size;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c = small_config();
    c.tournament_size = 0;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c = small_config();
    c.crossover_rate = 1.5;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    CHECK_THROWS_AS(parse_init_method("random"), ConfigError);
    CHECK(parse_init_method("pigrow_seed") == InitMethod::pigrow_seed);
}
