#pragma once

#include <iosfwd>

namespace chainscreen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFail = 2;

/// Runs one command line. Everything printed goes to `out`/`err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chainscreen::cli
