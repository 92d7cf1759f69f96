#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bivex::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

// Entry point of the `bivex` tool. args excludes the program name. Result
// documents go to --out (or `out`), diagnostics and structured errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bivex::app
