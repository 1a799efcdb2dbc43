#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace m0a {

// Exit codes: 0 success, 1 bad input or failed validation, 2 a certificate or
// fixture that did not come out positive.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotCertified = 2;

// Runs the command line `args` (without the program name). Everything is
// written to `out` / `err`, so tests can drive the tool in-process.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace m0a
