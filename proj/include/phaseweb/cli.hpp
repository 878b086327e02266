#pragma once

#include <iosfwd>

namespace pw {

// Full command-line front end, callable in-process for tests. Returns the
// process exit status: 0 on success, 1 on a domain error, 2 on a usage
// error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace pw
