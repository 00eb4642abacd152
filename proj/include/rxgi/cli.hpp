#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace rxgi {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBadRegexA = 3; // bench: first pattern does not compile
inline constexpr int kExitBadRegexB = 4; // bench: second pattern does not compile
inline constexpr int kExitBadRegexBoth = 5;
inline constexpr int kExitInterrupted = 130;

/// Entry point behind the rxgi executable. `args` excludes the program
/// name. A set `stop` flag makes run/compare flush partial results and
/// return kExitInterrupted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* stop = nullptr);

} // namespace rxgi
