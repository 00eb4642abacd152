#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rxgi {

enum class FitnessMode { wallclock, steps };

std::string_view to_string(FitnessMode mode);
/// Accepts "wallclock" or "steps"; throws std::invalid_argument otherwise.
FitnessMode parse_fitness_mode(std::string_view text);

/// Lower is better. `combined` is always functionality_error + cost_component.
struct FitnessReport {
    std::uint64_t functionality_error = 0;
    double cost_component = 1.0;
    double combined = 0.0;
    FitnessMode mode = FitnessMode::steps;
    std::vector<double> detail; // per case: best-of-N seconds, or steps
    bool timed_out = false;
    bool valid = true; // false when the phenotype failed to map or compile

    friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

} // namespace rxgi
