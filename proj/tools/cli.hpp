#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace a52::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_fail = 1;  // verify ran but a claim failed
inline constexpr int exit_usage = 2;
inline constexpr int exit_pole = 3;
inline constexpr int exit_integration = 4;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace a52::cli
