#pragma once

#include <iosfwd>

namespace ricci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalError = 3;

/// Entry point shared by the `ricci` binary and the tests. Subcommands:
/// curvature | encode | rewire | stats | wl | generate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ricci::cli
