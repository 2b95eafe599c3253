#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace broncho {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

/// Runs the command line `args` (args[0] is the program name). Diagnostics
/// go to `err` as a single line; results to `out`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Replaces `--config PATH` (or `--config=PATH`) with the file's settings,
/// inserted directly after the subcommand so later flags override them.
/// The file holds `key = value` lines; `#` starts a comment, underscores in
/// keys read as hyphens, `true` yields a bare flag and `false` drops it.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

/// Parses the config text into flag/value tokens.
std::vector<std::string> config_to_args(const std::string& text, const std::string& source);

}  // namespace broncho
