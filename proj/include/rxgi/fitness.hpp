#pragma once

#include "rxgi/engine.hpp"
#include "rxgi/fitness_report.hpp"
#include "rxgi/individual.hpp"
#include "rxgi/test_suite.hpp"

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rxgi {

inline constexpr double kCostFloor = 1e-9;

struct Budgets {
    double time_limit_seconds = 1.0;            // whole-suite wall-clock budget
    unsigned repetitions = 3;                   // best-of-N per case
    std::uint64_t step_normalizer = 10'000'000; // steps that count as a full 1.0

    friend bool operator==(const Budgets&, const Budgets&) = default;
};

/// |expected count - actual count| plus the number of characters covered by
/// exactly one of the expected and actual span unions.
std::uint64_t case_error(std::span<const Span> expected, std::span<const Span> actual);

/// Sum of case_error over the suite; `matches` is positionally aligned with
/// the suite's cases.
std::uint64_t functionality_error(std::span<const MatchList> matches, const TestSuite& suite);

/// Upper bound on functionality_error for any regex on this suite.
std::uint64_t max_functionality_error(const TestSuite& suite);

/// Fitness for phenotypes that fail to map or compile: strictly worse than
/// any evaluated individual.
FitnessReport worst_fitness(const TestSuite& suite, FitnessMode mode);

struct SuiteRun {
    std::vector<MatchList> matches;
    double cost_component = 1.0;
    std::vector<double> detail;
    bool timed_out = false;
};

/// Runs every case once (steps) or best-of-N under the suite budget
/// (wallclock). A blown budget aborts the run and pins the cost at 1.0.
SuiteRun run_suite(const CompiledRegex& regex, const TestSuite& suite, FitnessMode mode, const Budgets& budgets);

/// Execution-cost term in (0, 1].
double cost_component(const CompiledRegex& regex, const TestSuite& suite, FitnessMode mode, const Budgets& budgets);

FitnessReport evaluate_phenotype(std::string_view phenotype, const TestSuite& suite, FitnessMode mode,
                                 const Budgets& budgets);
FitnessReport evaluate(const Individual& individual, const TestSuite& suite, FitnessMode mode,
                       const Budgets& budgets);

/// Evaluation front end shared by a run. In steps mode results are a pure
/// function of the phenotype and are memoised.
class Evaluator {
public:
    Evaluator(TestSuite suite, FitnessMode mode, Budgets budgets);

    const TestSuite& suite() const { return suite_; }
    FitnessMode mode() const { return mode_; }
    const Budgets& budgets() const { return budgets_; }

    FitnessReport evaluate(const Individual& individual);

    /// Evaluates every individual lacking fitness. Steps mode fans out over
    /// `workers` threads; wall-clock timing always runs serially.
    void evaluate_all(std::span<Individual> individuals, unsigned workers);

    std::size_t cache_size() const;

private:
    TestSuite suite_;
    FitnessMode mode_;
    Budgets budgets_;
    mutable std::mutex cache_mutex_;
    std::unordered_map<std::string, FitnessReport> cache_;
};

} // namespace rxgi
