#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace muntz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitAccuracy = 3;
inline constexpr int kExitIo = 4;

/// Runs one subcommand. `args` excludes the program name. Artifacts go to --out when given,
/// otherwise to `out`; diagnostics go to `err`. Nothing is written when the command fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a..b" ranges and comma lists ("1..4,8,16").
std::vector<std::size_t> parse_index_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace muntz::cli
