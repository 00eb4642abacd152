#include "rxgi/test_suite.hpp"

#include <stdexcept>

namespace rxgi {

void validate_suite(const TestSuite& suite)
{
    if (suite.cases.empty())
        throw std::invalid_argument("test suite has no cases");
    for (std::size_t i = 0; i < suite.cases.size(); ++i) {
        const auto& c = suite.cases[i];
        const auto where = "case " + std::to_string(i) + ": ";
        if (c.kind == CaseKind::positive && c.expected.empty())
            throw std::invalid_argument(where + "positive case without expected spans");
        if (c.kind == CaseKind::negative && !c.expected.empty())
            throw std::invalid_argument(where + "negative case with expected spans");
        std::size_t previous_end = 0;
        for (std::size_t k = 0; k < c.expected.size(); ++k) {
            const auto& s = c.expected[k];
            if (s.end < s.start || s.end > c.input.size())
                throw std::invalid_argument(where + "span out of bounds");
            if (k > 0 && (s.start < previous_end || s.start <= c.expected[k - 1].start))
                throw std::invalid_argument(where + "spans overlap or are out of order");
            previous_end = s.end;
        }
    }
}

} // namespace rxgi
