#pragma once

/// \file cli.hpp
/// The `spinor` command line: `tower`, `sn` and `verify`.
///
/// Exit codes: 0 success, 1 mathematical failure or rejected input
/// (non-isometry, degenerate form), 2 usage error or malformed input.

#include <ostream>
#include <string>
#include <vector>

namespace spinor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinor::cli
