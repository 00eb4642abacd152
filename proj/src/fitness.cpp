#include "rxgi/fitness.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <thread>

namespace rxgi {

std::string_view to_string(FitnessMode mode) { return mode == FitnessMode::steps ? "steps" : "wallclock"; }

FitnessMode parse_fitness_mode(std::string_view text)
{
    if (text == "steps")
        return FitnessMode::steps;
    if (text == "wallclock")
        return FitnessMode::wallclock;
    throw std::invalid_argument("unknown fitness mode '" + std::string(text) + "' (expected steps or wallclock)");
}

std::uint64_t case_error(std::span<const Span> expected, std::span<const Span> actual)
{
    std::size_t extent = 0;
    for (const auto& s : expected)
        extent = std::max(extent, s.end);
    for (const auto& s : actual)
        extent = std::max(extent, s.end);
    std::vector<std::uint8_t> covered(extent, 0);
    for (const auto& s : expected)
        for (auto i = s.start; i < s.end; ++i)
            covered[i] |= 1;
    for (const auto& s : actual)
        for (auto i = s.start; i < s.end; ++i)
            covered[i] |= 2;
    const auto chars = static_cast<std::uint64_t>(
        std::count_if(covered.begin(), covered.end(), [](std::uint8_t c) { return c == 1 || c == 2; }));
    const auto e = expected.size();
    const auto a = actual.size();
    return chars + (e > a ? e - a : a - e);
}

std::uint64_t functionality_error(std::span<const MatchList> matches, const TestSuite& suite)
{
    if (matches.size() != suite.cases.size())
        throw std::invalid_argument("match lists (" + std::to_string(matches.size()) +
                                    ") are not aligned with suite cases (" + std::to_string(suite.cases.size()) +
                                    ")");
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < matches.size(); ++i)
        total += case_error(suite.cases[i].expected, matches[i].matches);
    return total;
}

std::uint64_t max_functionality_error(const TestSuite& suite)
{
    // Per case: at most every character differs, and at most len + 1
    // matches (all empty) against the expected count.
    std::uint64_t bound = 0;
    for (const auto& c : suite.cases)
        bound += 2 * c.input.size() + 1 + c.expected.size();
    return bound;
}

FitnessReport worst_fitness(const TestSuite& suite, FitnessMode mode)
{
    FitnessReport r;
    r.functionality_error = max_functionality_error(suite) + 1;
    r.cost_component = 1.0;
    r.combined = static_cast<double>(r.functionality_error) + r.cost_component;
    r.mode = mode;
    r.valid = false;
    return r;
}

namespace {

SuiteRun run_steps(const CompiledRegex& regex, const TestSuite& suite, const Budgets& budgets)
{
    SuiteRun run;
    run.matches.resize(suite.cases.size());
    run.detail.assign(suite.cases.size(), 0.0);
    std::uint64_t remaining = budgets.step_normalizer;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < suite.cases.size(); ++i) {
        if (remaining == 0) {
            run.timed_out = true;
            break;
        }
        run.matches[i] = find_all(regex, suite.cases[i].input, remaining);
        const auto used = run.matches[i].steps;
        run.detail[i] = static_cast<double>(used);
        total += used;
        remaining -= used;
        if (run.matches[i].budget_exhausted) {
            run.timed_out = true;
            break;
        }
    }
    run.cost_component = run.timed_out
                             ? 1.0
                             : std::clamp(static_cast<double>(total) / static_cast<double>(budgets.step_normalizer),
                                          kCostFloor, 1.0);
    return run;
}

SuiteRun run_wallclock(const CompiledRegex& regex, const TestSuite& suite, const Budgets& budgets)
{
    using clock = std::chrono::steady_clock;
    SuiteRun run;
    run.matches.resize(suite.cases.size());
    run.detail.assign(suite.cases.size(), 0.0);
    const auto deadline =
        clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(budgets.time_limit_seconds));
    const SearchLimits limits{std::numeric_limits<std::uint64_t>::max(), deadline};
    const unsigned reps = std::max(1u, budgets.repetitions);

    double total = 0.0;
    for (std::size_t i = 0; i < suite.cases.size() && !run.timed_out; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (unsigned r = 0; r < reps; ++r) {
            const auto t0 = clock::now();
            auto m = find_all(regex, suite.cases[i].input, limits);
            const auto t1 = clock::now();
            if (m.budget_exhausted || t1 > deadline) {
                run.timed_out = true;
                if (r == 0)
                    run.matches[i] = std::move(m);
                break;
            }
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
            if (r == 0)
                run.matches[i] = std::move(m);
        }
        if (!run.timed_out) {
            run.detail[i] = best;
            total += best;
        }
    }
    run.cost_component = run.timed_out ? 1.0 : std::clamp(total, kCostFloor, 1.0);
    return run;
}

} // namespace

SuiteRun run_suite(const CompiledRegex& regex, const TestSuite& suite, FitnessMode mode, const Budgets& budgets)
{
    return mode == FitnessMode::steps ? run_steps(regex, suite, budgets) : run_wallclock(regex, suite, budgets);
}

double cost_component(const CompiledRegex& regex, const TestSuite& suite, FitnessMode mode, const Budgets& budgets)
{
    return run_suite(regex, suite, mode, budgets).cost_component;
}

FitnessReport evaluate_phenotype(std::string_view phenotype, const TestSuite& suite, FitnessMode mode,
                                 const Budgets& budgets)
{
    std::optional<CompiledRegex> regex;
    try {
        regex = compile(phenotype);
    } catch (const RegexSyntaxError&) {
        return worst_fitness(suite, mode);
    }
    auto run = run_suite(*regex, suite, mode, budgets);
    FitnessReport r;
    r.functionality_error = functionality_error(run.matches, suite);
    r.cost_component = run.cost_component;
    r.combined = static_cast<double>(r.functionality_error) + r.cost_component;
    r.mode = mode;
    r.detail = std::move(run.detail);
    r.timed_out = run.timed_out;
    return r;
}

FitnessReport evaluate(const Individual& individual, const TestSuite& suite, FitnessMode mode, const Budgets& budgets)
{
    if (!individual.tree)
        return worst_fitness(suite, mode);
    return evaluate_phenotype(individual.phenotype, suite, mode, budgets);
}

Evaluator::Evaluator(TestSuite suite, FitnessMode mode, Budgets budgets)
    : suite_(std::move(suite)), mode_(mode), budgets_(budgets)
{
    validate_suite(suite_);
}

FitnessReport Evaluator::evaluate(const Individual& individual)
{
    if (!individual.tree)
        return worst_fitness(suite_, mode_);
    if (mode_ == FitnessMode::wallclock)
        return evaluate_phenotype(individual.phenotype, suite_, mode_, budgets_);
    {
        std::lock_guard lock(cache_mutex_);
        if (const auto it = cache_.find(individual.phenotype); it != cache_.end())
            return it->second;
    }
    auto report = evaluate_phenotype(individual.phenotype, suite_, mode_, budgets_);
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(individual.phenotype, report);
    return report;
}

void Evaluator::evaluate_all(std::span<Individual> individuals, unsigned workers)
{
    std::vector<Individual*> pending;
    for (auto& ind : individuals)
        if (!ind.fitness)
            pending.push_back(&ind);

    if (mode_ == FitnessMode::wallclock || workers <= 1 || pending.size() < 2) {
        for (auto* ind : pending)
            ind->fitness = evaluate(*ind);
        return;
    }

    // Workers only read shared state and write their own slots; no
    // randomness is consumed, so results do not depend on scheduling.
    std::vector<std::thread> pool;
    const auto n = std::min<std::size_t>(workers, pending.size());
    for (std::size_t w = 0; w < n; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < pending.size(); i += n)
                pending[i]->fitness = evaluate(*pending[i]);
        });
    }
    for (auto& t : pool)
        t.join();
}

std::size_t Evaluator::cache_size() const
{
    std::lock_guard lock(cache_mutex_);
    return cache_.size();
}

} // namespace rxgi
