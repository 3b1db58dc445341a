#pragma once

#include <iosfwd>

namespace signcorr::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the `signcorr` tool. Reports go to `out`, diagnostics to
/// `err`. Returns 0 on success, 1 on usage errors and 2 on numerical
/// failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace signcorr::cli
