#include "rxgi/stats.hpp"

#include <algorithm>
#include <cmath>

namespace rxgi {

Quartiles quartiles(std::span<const double> values)
{
    if (values.empty())
        throw InsufficientDataError("quartiles of an empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    auto at = [&](double p) {
        const double h = static_cast<double>(v.size() - 1) * p;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    return {at(0.25), at(0.5), at(0.75)};
}

BootstrapDistribution bootstrap_diff(std::span<const double> a, std::span<const double> b, std::size_t inner,
                                     std::size_t outer, Rng& rng, bool mirrored)
{
    if (a.empty() || b.empty())
        throw InsufficientDataError("bootstrap needs non-empty samples");
    if (inner == 0 || outer == 0)
        throw std::invalid_argument("bootstrap repetition counts must be positive");
    BootstrapDistribution d;
    d.values.reserve(outer);
    for (std::size_t o = 0; o < outer; ++o) {
        double sum = 0.0;
        for (std::size_t i = 0; i < inner; ++i) {
            std::size_t ia = 0;
            std::size_t ib = 0;
            if (mirrored) {
                ib = rng.index(b.size());
                ia = rng.index(a.size());
            } else {
                ia = rng.index(a.size());
                ib = rng.index(b.size());
            }
            sum += a[ia] - b[ib];
        }
        d.values.push_back(sum / static_cast<double>(inner));
    }
    d.quartiles = quartiles(d.values);
    d.significant = d.quartiles.q1 > 0.0 || d.quartiles.q3 < 0.0;
    return d;
}

std::vector<SpeedupSample> speedup_samples(const std::string& problem,
                                           const std::vector<std::pair<std::string, std::vector<RunResult>>>& runs)
{
    std::vector<SpeedupSample> out;
    for (const auto& [method, results] : runs) {
        for (std::size_t r = 0; r < results.size(); ++r) {
            const auto s = results[r].speedup();
            if (!s)
                throw InsufficientDataError("run " + std::to_string(r) + " of " + method +
                                            " found no error-free variant");
            out.push_back({problem, method, r, *s});
        }
    }
    return out;
}

InitialisationComparison compare_initialisations(
    const std::string& problem, const std::vector<std::pair<std::string, std::vector<RunResult>>>& runs, Rng& rng,
    std::size_t inner, std::size_t outer)
{
    if (runs.size() < 2)
        throw InsufficientDataError("comparison needs at least two methods");
    for (const auto& [method, results] : runs)
        if (results.size() < 2)
            throw InsufficientDataError("method " + method + " has fewer than two runs");

    InitialisationComparison c;
    c.problem = problem;
    c.samples = speedup_samples(problem, runs);
    std::vector<std::vector<double>> values(runs.size());
    for (std::size_t m = 0, k = 0; m < runs.size(); ++m)
        for (std::size_t r = 0; r < runs[m].second.size(); ++r)
            values[m].push_back(c.samples[k++].speedup);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = i + 1; j < runs.size(); ++j)
            c.pairs.push_back({runs[i].first, runs[j].first, bootstrap_diff(values[i], values[j], inner, outer, rng)});
    }
    return c;
}

} // namespace rxgi
