#pragma once

#include <iosfwd>

namespace patrace::cli {

/// Stable exit-code contract.
enum ExitCode : int {
    ok = 0,
    usage = 1,
    invalid = 2,
    parse_error = 3,
    oracle_mismatch = 4,
    martingale_violation = 5,
};

/// Entry point for the `patrace` tool; writes results to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace patrace::cli
