#pragma once

#include <ostream>

namespace gabornc::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_not_a_frame = 2,
    exit_expected_failure = 3,
};

/// Environment variable that overrides output.directory (flags still win).
inline constexpr const char* output_dir_env = "GABORNC_OUTPUT_DIR";

/// Entry point of the gabornc tool. Subcommands: frame-bounds, dual-window,
/// tight-window, ncg-check, blt-sweep, grid-divergence, projection,
/// battle-check.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gabornc::cli
