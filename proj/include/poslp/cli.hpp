#pragma once

#include <ostream>

namespace poslp {

/// Runs the command line. Returns 0 on success, 1 when the analysis is
/// infeasible or the system fails a precondition, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poslp
