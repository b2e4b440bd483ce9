// SPDX-License-Identifier: MIT
//
// The `lab` command line: residual, oracle, fit, boundary-d, solve, experiment.
#pragma once

#include <iosfwd>
#include <string>

namespace lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

/// Parses and runs one subcommand. Results go to `out`, error JSON to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "0.3", "pi", "pi/4", "3pi/8", "-pi/2"; ConfigError otherwise.
[[nodiscard]] double parse_angle(const std::string& text);

}  // namespace lab
