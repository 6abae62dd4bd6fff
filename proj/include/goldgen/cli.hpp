#pragma once

#include <iosfwd>

#include "goldgen/config.hpp"

namespace goldgen {

// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

// Each command writes its main product to cfg.output when set, else to `out`.
int cmd_generate(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_period(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const std::string& suite, std::size_t n, double tol, std::uint64_t seed, std::ostream& out);

// Parses argv, runs the subcommand, and maps exceptions onto exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace goldgen
