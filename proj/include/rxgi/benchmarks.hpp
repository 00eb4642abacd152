#pragma once

#include "rxgi/boosting.hpp"
#include "rxgi/test_suite.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxgi {

class UnknownProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Problem {
    std::string name;
    std::string seed;
    std::vector<std::string> base_inputs;
    std::string notes;
};

/// The nine benchmark problems, in a fixed order.
std::vector<std::string> list_problems();

Problem load_problem(std::string_view name);

/// Boosted suite for a problem, seeded by its own regex.
TestSuite problem_suite(const Problem& problem, const BoostConfig& cfg = {});

} // namespace rxgi
