#pragma once

#include <iosfwd>
#include <stop_token>

namespace antidice::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kMismatch = 2;

/// Parses argv (argv[0] is the program name), runs one subcommand and
/// returns its exit code. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::stop_token stop = {});

}  // namespace antidice::cli
