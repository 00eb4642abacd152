#pragma once

#include "rxgi/evolution.hpp"
#include "rxgi/rng.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rxgi {

class InsufficientDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

/// Quartiles by linear interpolation between order statistics (the
/// h = (n-1)p rule). Throws on empty input.
Quartiles quartiles(std::span<const double> values);

struct SpeedupSample {
    std::string problem;
    std::string method;
    std::size_t run_index = 0;
    double speedup = 0.0;
};

struct BootstrapDistribution {
    std::vector<double> values; // one mean difference per outer repetition
    Quartiles quartiles;
    // The interquartile range excludes zero.
    bool significant = false;
};

/// Each outer repetition draws `inner` pairs (one value from each sample,
/// with replacement) and keeps the mean of a - b. With `mirrored`, each pair
/// draws its b index before its a index, so bootstrap_diff(b, a, mirrored)
/// under an identically seeded stream is the exact negation of
/// bootstrap_diff(a, b).
BootstrapDistribution bootstrap_diff(std::span<const double> a, std::span<const double> b, std::size_t inner,
                                     std::size_t outer, Rng& rng, bool mirrored = false);

inline constexpr std::size_t kBootstrapInner = 1000;
inline constexpr std::size_t kBootstrapOuter = 1000;

struct PairComparison {
    std::string method_a;
    std::string method_b;
    BootstrapDistribution distribution;

    std::string label() const { return method_a + "-vs-" + method_b; }
};

struct InitialisationComparison {
    std::string problem;
    std::vector<SpeedupSample> samples;
    std::vector<PairComparison> pairs; // every unordered pair, in method order
};

/// Best error-free speedup per run, per method.
std::vector<SpeedupSample> speedup_samples(const std::string& problem,
                                           const std::vector<std::pair<std::string, std::vector<RunResult>>>& runs);

/// Pairwise bootstrap comparisons of best speedups. Needs at least two
/// methods with at least two runs each; runs without an error-free variant
/// are an error.
InitialisationComparison compare_initialisations(
    const std::string& problem, const std::vector<std::pair<std::string, std::vector<RunResult>>>& runs, Rng& rng,
    std::size_t inner = kBootstrapInner, std::size_t outer = kBootstrapOuter);

} // namespace rxgi
