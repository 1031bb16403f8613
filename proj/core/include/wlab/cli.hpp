#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wlab::cli {

// Exit codes: 0 when every verdict passes, 1 otherwise, 2 on usage or parse
// errors, 3 on an unexpected library failure.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitError = 3;

// args excludes the program name. Reports go to out as JSON, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wlab::cli
