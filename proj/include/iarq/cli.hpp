#pragma once

#include <iosfwd>

namespace iarq {

/// Command-line entry point. Returns 0 on success, 2 on usage errors (help text printed)
/// and 1 on configuration or data errors.
int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace iarq
