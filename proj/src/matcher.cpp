#include "rxgi/engine.hpp"

namespace rxgi {

namespace {

using ast::Kind;

// Backtracking recursion beyond this depth is reported as budget exhaustion
// rather than risking the thread's stack.
constexpr std::uint32_t kMaxRecursion = 12000;

// Non-owning reference to a continuation `bool(std::size_t end)`.
class Continuation {
public:
    template <typename F>
    Continuation(F& f) // NOLINT(google-explicit-constructor)
        : obj_(&f), call_([](void* o, std::size_t p) { return (*static_cast<F*>(o))(p); })
    {
    }

    bool operator()(std::size_t p) const { return call_(obj_, p); }

private:
    void* obj_;
    bool (*call_)(void*, std::size_t);
};

class Matcher {
public:
    Matcher(const CompiledRegex& re, std::string_view input, const SearchLimits& limits)
        : re_(re), s_(input), limits_(limits)
    {
    }

    bool exhausted() const { return exhausted_; }
    std::uint64_t steps() const { return steps_; }

    bool step()
    {
        if (exhausted_)
            return false;
        if (steps_ >= limits_.step_limit) {
            exhausted_ = true;
            return false;
        }
        ++steps_;
        if (limits_.deadline && (steps_ & 1023u) == 0 && std::chrono::steady_clock::now() > *limits_.deadline) {
            exhausted_ = true;
            return false;
        }
        return true;
    }

    bool match(std::uint32_t idx, std::size_t pos, Continuation k)
    {
        Depth guard(*this);
        if (exhausted_)
            return false;
        const auto& n = re_.node(idx);
        switch (n.kind) {
        case Kind::empty:
        case Kind::comment:
            return k(pos);
        case Kind::literal:
            return step() && pos < s_.size() && s_[pos] == n.literal && k(pos + 1);
        case Kind::any:
            return step() && pos < s_.size() && s_[pos] != '\n' && k(pos + 1);
        case Kind::char_class:
            return step() && pos < s_.size() && n.members.test(static_cast<unsigned char>(s_[pos])) && k(pos + 1);
        case Kind::line_start:
            return step() && pos == 0 && k(pos);
        case Kind::line_end:
            return step() && (pos == s_.size() || (pos + 1 == s_.size() && s_[pos] == '\n')) && k(pos);
        case Kind::sequence:
            return sequence(n, 0, pos, k);
        case Kind::alternation:
            for (const auto child : n.children) {
                if (!step())
                    return false;
                if (match(child, pos, k))
                    return true;
            }
            return false;
        case Kind::group:
            return match(n.children.front(), pos, k);
        case Kind::lookahead: {
            if (!step())
                return false;
            auto accept = [](std::size_t) { return true; };
            const bool found = match(n.children.front(), pos, accept);
            if (exhausted_ || found == n.negative)
                return false;
            return k(pos);
        }
        case Kind::repeat:
            return repeat(n, 0, pos, k);
        }
        return false;
    }

private:
    struct Depth {
        explicit Depth(Matcher& m) : m_(m)
        {
            if (++m_.depth_ > kMaxRecursion)
                m_.exhausted_ = true;
        }
        ~Depth() { --m_.depth_; }
        Matcher& m_;
    };

    bool sequence(const ast::Node& n, std::size_t i, std::size_t pos, Continuation k)
    {
        if (i == n.children.size())
            return k(pos);
        auto next = [&](std::size_t p) { return sequence(n, i + 1, p, k); };
        return match(n.children[i], pos, next);
    }

    // Iterations past the minimum must consume input; an empty iteration
    // there fails instead of looping.
    bool repeat(const ast::Node& n, std::uint32_t count, std::size_t pos, Continuation k)
    {
        Depth guard(*this);
        if (!step())
            return false;
        const auto child = n.children.front();
        if (count < n.min) {
            auto next = [&](std::size_t q) { return repeat(n, count + 1, q, k); };
            return match(child, pos, next);
        }
        auto iterate = [&] {
            if (count >= n.max)
                return false;
            auto next = [&](std::size_t q) { return q != pos && repeat(n, count + 1, q, k); };
            return match(child, pos, next);
        };
        if (n.greedy)
            return iterate() || (!exhausted_ && k(pos));
        return k(pos) || (!exhausted_ && iterate());
    }

    const CompiledRegex& re_;
    std::string_view s_;
    const SearchLimits& limits_;
    std::uint64_t steps_ = 0;
    std::uint32_t depth_ = 0;
    bool exhausted_ = false;
};

} // namespace

MatchList find_all(const CompiledRegex& regex, std::string_view input, const SearchLimits& limits)
{
    MatchList out;
    Matcher m(regex, input, limits);
    std::size_t pos = 0;
    while (pos <= input.size()) {
        std::optional<Span> found;
        for (std::size_t start = pos; start <= input.size(); ++start) {
            if (!m.step())
                break;
            std::size_t end = 0;
            auto accept = [&](std::size_t e) {
                end = e;
                return true;
            };
            if (m.match(regex.root(), start, accept)) {
                found = Span{start, end};
                break;
            }
            if (m.exhausted())
                break;
        }
        if (!found || m.exhausted())
            break;
        out.matches.push_back(*found);
        pos = found->end > found->start ? found->end : found->end + 1;
    }
    out.steps = m.steps();
    out.budget_exhausted = m.exhausted();
    return out;
}

MatchList find_all(const CompiledRegex& regex, std::string_view input, std::uint64_t step_limit)
{
    if (step_limit == 0)
        throw std::invalid_argument("step_limit must be positive");
    return find_all(regex, input, SearchLimits{step_limit, std::nullopt});
}

StepCost step_cost(const CompiledRegex& regex, const TestSuite& suite, std::uint64_t step_limit)
{
    StepCost cost;
    cost.per_case.reserve(suite.cases.size());
    for (const auto& c : suite.cases) {
        const auto m = find_all(regex, c.input, step_limit);
        cost.per_case.push_back(m.steps);
        cost.total += m.steps;
        cost.budget_exhausted |= m.budget_exhausted;
    }
    return cost;
}

} // namespace rxgi
