#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bwtk::cli {

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on usage or input
/// errors, 2 when a measure cannot be computed (e.g. zero denominator).
///
/// A leading "oracle" argument runs the same command on the brute-force
/// reference implementations instead (small inputs only).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwtk::cli
