#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wavesym::cli {

/// Exit codes: 0 success, 2 validation or usage error, 3 numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace wavesym::cli
