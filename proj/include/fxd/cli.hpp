#pragma once

#include <ostream>

namespace fxd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the `fxd` command line tool. Output goes to `out`,
/// diagnostics and errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fxd
