#pragma once

#include <iosfwd>

namespace nlsplit::cli {

// Exit codes of the command-line front end.
inline constexpr int kSuccess = 0;
inline constexpr int kError = 1;
inline constexpr int kBlowup = 2;

// Full command-line entry point; reports go to `out`, diagnostics to `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlsplit::cli
