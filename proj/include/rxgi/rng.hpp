#pragma once

#include <cstdint>
#include <random>

namespace rxgi {

// Sequential PRNG stream. Distributions are implemented here rather than via
// <random> distribution classes, whose output is implementation-defined, so
// that a seed reproduces the same run on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n)
    {
        const std::uint64_t bound = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit)
            x = engine_();
        return static_cast<std::size_t>(x % bound);
    }

    // Uniform double in [0, 1) built from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace rxgi
