#pragma once

#include <ostream>
#include <string>

namespace bohr {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `bohr` tool, separated from main() for testing.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Help text covering every verb and flag.
std::string cli_help();

}  // namespace bohr
