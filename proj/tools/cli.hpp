#pragma once

#include <ostream>

namespace gwalsh::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 1 numeric failure or a
/// failed check, 2 invalid arguments or input files.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwalsh::cli
