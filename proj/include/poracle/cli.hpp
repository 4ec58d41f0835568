#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poracle::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_capacity = 3,
};

/// Name of the environment variable that overrides the simulator memory budget.
inline constexpr const char* memory_budget_env = "PORACLE_MEMORY_BUDGET";

/// Parses "123", "512M", "16G" (binary multiples). Returns nullopt on garbage.
std::optional<std::uint64_t> parse_byte_size(std::string_view text);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace poracle::cli
