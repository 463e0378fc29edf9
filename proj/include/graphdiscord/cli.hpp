#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gd::cli {

/// Exit codes of the gdisc tool.
enum ExitCode : int {
    ok = 0,            // success, or the check/verdict holds
    negative = 1,      // the check/verdict does not hold
    input_error = 2,   // bad arguments, unreadable or malformed input, contract violations
    validity_error = 3 // input is not a valid density operator (negative eigenvalue, zero trace)
};

/// Runs one gdisc invocation. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gd::cli
